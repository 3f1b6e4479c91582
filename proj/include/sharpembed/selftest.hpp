#ifndef SHARPEMBED_SELFTEST_HPP
#define SHARPEMBED_SELFTEST_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sharpembed/certify.hpp"
#include "sharpembed/oracle.hpp"

namespace sharpembed {

struct SelfTestEntry {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Desk-scale run of the library's cross-module invariants. Exercised by the
// CLI `selftest` command; the full suites live in the test tree.
inline std::vector<SelfTestEntry> run_selftest(int max_r = 8, const std::optional<std::string>& fixture_path = std::nullopt) {
  std::vector<SelfTestEntry> out;
  auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    SelfTestEntry e{name, true, ""};
    try {
      e.detail = body();
    } catch (const std::exception& ex) {
      e.passed = false;
      e.detail = ex.what();
    }
    out.push_back(e);
  };

  run("oracle_equivalence", [&] {
    const Rational xs[] = {Rational(0), Rational(1, 4), Rational(-1, 4), Rational(1, 2), Rational(-1, 2)};
    int checked = 0;
    for (int r = 1; r <= max_r; ++r)
      for (int k = 0; k < r; ++k) {
        Poly a2 = amplitude_squared(ProblemSpec(r, k));
        for (const auto& x : xs) {
          if (a2(x) != oracle_amplitude_squared(ProblemSpec(r, k), x))
            throw InternalMismatch("closed form vs Gram-projection oracle at r=" + std::to_string(r) +
                                   " k=" + std::to_string(k));
          ++checked;
        }
      }
    return std::to_string(checked) + " exact comparisons";
  });

  run("lemma_sign_law", [&] {
    for (int r = 1; r <= max_r + 4; ++r)
      for (int k = 0; k < r; ++k) {
        auto lb = second_derivative_at_zero(ProblemSpec(r, k));
        bool ok = (k % 2 == 1) ? sgn(lb.second_derivative) > 0
                               : sgn(lb.second_derivative) < 0;
        if (!ok) throw InternalMismatch("sign law violated at r=" + std::to_string(r) + " k=" + std::to_string(k));
      }
    return "triple-route agreement and sign law up to r=" + std::to_string(max_r + 4);
  });

  run("factorization_identity", [&] {
    Poly x2({Rational(0), Rational(0), Rational(1)});
    Poly one_minus_x2({Rational(1), Rational(0), Rational(-1)});
    for (int r = 1; r <= max_r; ++r)
      for (int k = 0; k < r; ++k) {
        auto fac = factor_amplitude(ProblemSpec(r, k));
        Poly rebuilt;
        for (int i = 0; i <= fac.p_poly.degree(); ++i)
          rebuilt = rebuilt + fac.p_poly.coeff(i) * Poly::pow(x2, static_cast<unsigned long>(i));
        rebuilt = rebuilt * Poly::pow(one_minus_x2, static_cast<unsigned long>(fac.exponent));
        if (!(rebuilt == amplitude_squared(ProblemSpec(r, k))))
          throw FactorizationBroken("rebuild mismatch at r=" + std::to_string(r) + " k=" + std::to_string(k));
        if (fac.p1_poly(Rational(0)) * 2 != second_derivative_at_zero(ProblemSpec(r, k)).second_derivative)
          throw InternalMismatch("P1(0) != (A^2)''(0)/2 at r=" + std::to_string(r) + " k=" + std::to_string(k));
      }
    return "P(x^2)(1-x^2)^m identity and P1(0) relation up to r=" + std::to_string(max_r);
  });

  run("extremal_series_parity", [&] {
    for (int r = 2; r <= std::min(max_r, 7); ++r)
      for (int k = 0; k < r; ++k) {
        Poly f = extremal_series_truncated(ProblemSpec(r, k), Rational(0), r + 4);
        for (int i = (k % 2 == 0) ? 1 : 0; i <= f.degree(); i += 2)
          if (sgn(f.coeff(i)) != 0)
            throw InternalMismatch("parity violated at r=" + std::to_string(r) + " k=" + std::to_string(k));
      }
    return "truncated series at x=0 has pure parity";
  });

  run("rodrigues_consistency", [&] {
    for (int n = 0; n <= 8; ++n)
      for (int s = 0; s <= 2 * n + 2; ++s)
        if (rodrigues_derivative_at_zero(n, s) != rodrigues_poly(n).derivative(s)(Rational(0)))
          throw InternalMismatch("closed form vs direct differentiation at n=" + std::to_string(n) +
                                 " s=" + std::to_string(s));
    return "closed form matches direct differentiation up to n=8";
  });

  run("positivity_primitives", [&] {
    Poly q({Rational(160), Rational(-96), Rational(13)});
    if (!positivity_on_ray(q, Rational(5)).proven) throw InternalMismatch("13r^2-96r+160 on [5,inf)");
    if (positivity_on_ray(Poly({Rational(-10), Rational(1)}), Rational(5)).proven)
      throw InternalMismatch("r-10 wrongly proven positive on [5,inf)");
    return "ray positivity spot checks";
  });

  run("fixtures", [&] {
    if (fixture_path) {
      auto f = load_fixture(*fixture_path);
      auto fid = verify_fixture_fidelity(f);
      if (!fid.proven) throw FixtureInvalid("fixture fidelity: " + fid.detail);
      return "fixture k=" + std::to_string(f.k) + " validated; " + fid.detail;
    }
    for (int k : {4, 6}) {
      auto f = builtin_fixture(k);
      auto fid = verify_fixture_fidelity(f);
      if (!fid.proven) throw FixtureInvalid("k=" + std::to_string(k) + ": " + fid.detail);
    }
    return std::string("built-in fixtures for k=4,6 validated against the reference tables");
  });

  return out;
}

}  // namespace sharpembed

#endif
