#ifndef SHARPEMBED_AMPLITUDE_HPP
#define SHARPEMBED_AMPLITUDE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "sharpembed/poly.hpp"

namespace sharpembed {

// Internal cross-check failed: a formula was transcribed wrongly somewhere.
struct InternalMismatch : std::runtime_error {
  explicit InternalMismatch(const std::string& what) : std::runtime_error(what) {}
};

// The amplitude factorization identity failed. This is a theorem; seeing the
// error means an implementation bug, never bad input.
struct FactorizationBroken : std::runtime_error {
  explicit FactorizationBroken(const std::string& what) : std::runtime_error(what) {}
};

// Center-based best constant requested for odd k, where the maximizer of the
// amplitude is off-center.
struct OddKCenter : std::runtime_error {
  explicit OddKCenter(const std::string& what) : std::runtime_error(what) {}
};

// Orders (r, k) of the controlling and estimated derivatives; p=2, q=infinity
// fixed throughout.
struct ProblemSpec {
  int r = 1;
  int k = 0;
  ProblemSpec() = default;
  ProblemSpec(int r_, int k_) : r(r_), k(k_) {
    if (k < 0 || r <= k) throw std::invalid_argument("ProblemSpec: need 0 <= k < r");
  }
};

// (1 - x^2)^n / (2^n n!).
inline Poly rodrigues_poly(int n) {
  if (n < 0) throw std::invalid_argument("rodrigues_poly: negative order");
  Poly base({Rational(1), Rational(0), Rational(-1)});
  Rational scale(Integer(1), pow2(static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n)));
  scale.canonicalize();
  return scale * Poly::pow(base, static_cast<unsigned long>(n));
}

// s-th derivative of the Rodrigues kernel at zero, in closed form:
// 0 for odd s, (-1)^m (2m)! / (2^n n!) * C(n, m) for s = 2m.
inline Rational rodrigues_derivative_at_zero(int n, int s) {
  if (n < 0 || s < 0) throw std::invalid_argument("rodrigues_derivative_at_zero: negative argument");
  if (s % 2 == 1) return Rational(0);
  int m = s / 2;
  if (m > n) return Rational(0);
  Rational v(factorial(static_cast<unsigned long>(s)) * binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(m)),
             pow2(static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n)));
  v.canonicalize();
  if (m % 2 == 1) v = -v;
  return v;
}

// The squared amplitude as an exact polynomial in x:
//   Q_{r-k-1}^2 (1-x^2) / (2(2r-2k-1)) - sum_{n=r-k}^{r-1} (Q_n^{(n+k-r)})^2 (n + 1/2).
// The sum is empty for k = 0.
inline Poly amplitude_squared(const ProblemSpec& spec) {
  const int r = spec.r, k = spec.k;
  Poly q = rodrigues_poly(r - k - 1);
  Poly one_minus_x2({Rational(1), Rational(0), Rational(-1)});
  Poly total = (q * q * one_minus_x2) * Rational(1, 2 * (2 * r - 2 * k - 1));
  for (int n = r - k; n <= r - 1; ++n) {
    Poly d = rodrigues_poly(n).derivative(n + k - r);
    total = total - (d * d) * Rational(2 * n + 1, 2);
  }
  return total;
}

// The pair (P_{r,k}, m = 2r-2k-1) with A^2(x) = P(x^2)(1-x^2)^m, plus the
// derivative polynomial P1 = (1-t) P' - m P.
struct AmplitudeFactorization {
  ProblemSpec spec;
  Poly p_poly;   // in t = x^2, degree exactly k
  int exponent;  // m = 2r - 2k - 1
  Poly p1_poly;  // in t
};

inline AmplitudeFactorization factor_amplitude(const ProblemSpec& spec) {
  const int m = 2 * spec.r - 2 * spec.k - 1;
  Poly a2 = amplitude_squared(spec);
  Poly in_t;
  try {
    in_t = a2.even_powers_to_t();
  } catch (const NonZeroRemainder& e) {
    throw FactorizationBroken(std::string("factor_amplitude: odd power in A^2: ") + e.what());
  }
  Poly one_minus_t({Rational(1), Rational(-1)});
  Poly p;
  try {
    p = in_t.divide_exact(Poly::pow(one_minus_t, static_cast<unsigned long>(m)));
  } catch (const NonZeroRemainder& e) {
    throw FactorizationBroken(std::string("factor_amplitude: (1-t)^m does not divide A^2: ") + e.what());
  }
  if (p.degree() != spec.k)
    throw FactorizationBroken("factor_amplitude: P has degree " + std::to_string(p.degree()) +
                              ", expected " + std::to_string(spec.k));
  if (sgn(p(Rational(0))) <= 0) throw FactorizationBroken("factor_amplitude: P(0) <= 0");
  Poly p1 = one_minus_t * p.derivative() - Rational(m) * p;
  return {spec, p, m, p1};
}

enum class CenterClassification { LocalMin, LocalMax };

// (A^2)''(0) with the bookkeeping of the local-extremum lemma: the factored
// constant M, the telescoping values F(t), and (for even k) the correction R.
struct LemmaBreakdown {
  ProblemSpec spec;
  Rational second_derivative;
  Rational M;
  std::map<int, Rational> F_values;  // t = 1 .. floor(k/2)+1
  std::optional<Rational> R;         // even k only
  CenterClassification verdict;      // of the amplitude at x = 0
};

namespace detail {

inline Rational lemma_M(int r, int k) {
  Rational v(Integer(1), pow2(static_cast<unsigned long>(2 * r - 2 * k - 1)) *
                             factorial(static_cast<unsigned long>(r - k - 1)) *
                             factorial(static_cast<unsigned long>(r - k - 1)) * Integer(r - k));
  v.canonicalize();
  return v;
}

inline Rational lemma_F(int r, int k, int t) {
  Integer num = factorial(static_cast<unsigned long>(2 * t)) * factorial(static_cast<unsigned long>(2 * t)) *
                factorial(static_cast<unsigned long>(r - k - 1)) * factorial(static_cast<unsigned long>(r - k - 1)) *
                Integer(r - k) * Integer(r - k + t - 1);
  Integer den = pow2(static_cast<unsigned long>(4 * t - 1)) * factorial(static_cast<unsigned long>(t)) *
                factorial(static_cast<unsigned long>(t)) * factorial(static_cast<unsigned long>(r - k + t - 1)) *
                factorial(static_cast<unsigned long>(r - k + t - 1));
  Rational v(num, den);
  v.canonicalize();
  return v;
}

inline Rational lemma_R(int r, int k) {
  const int l = k / 2;
  Integer num = factorial(static_cast<unsigned long>(k)) * factorial(static_cast<unsigned long>(k + 2)) *
                binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(l)) *
                binomial(static_cast<unsigned long>(r), static_cast<unsigned long>(l + 1)) * Integer(2 * r + 1);
  Integer den = pow2(static_cast<unsigned long>(2 * r)) * factorial(static_cast<unsigned long>(r)) *
                factorial(static_cast<unsigned long>(r));
  Rational v(num, den);
  v.canonicalize();
  return v;
}

// The series expansion of (A^2)''(0): leading Rodrigues term plus the sum
// over s of squared and mixed kernel derivatives at zero.
inline Rational second_derivative_series(int r, int k) {
  Rational total(Integer(-2), factorial(static_cast<unsigned long>(r - k - 1)) *
                                  factorial(static_cast<unsigned long>(r - k - 1)) *
                                  pow2(static_cast<unsigned long>(2 * r - 2 * k - 1)));
  total.canonicalize();
  for (int s = 0; s <= k - 1; ++s) {
    int n = r - k + s;
    Rational q1 = rodrigues_derivative_at_zero(n, s + 1);
    Rational q0 = rodrigues_derivative_at_zero(n, s);
    Rational q2 = rodrigues_derivative_at_zero(n, s + 2);
    total -= Rational(2 * n + 1) * (q1 * q1 + q0 * q2);
  }
  return total;
}

// The lemma's final closed form, by parity of k.
inline Rational second_derivative_closed_form(int r, int k) {
  if (k % 2 == 1) {
    const int h = (k + 1) / 2;
    Integer num = factorial(static_cast<unsigned long>(k + 1)) * factorial(static_cast<unsigned long>(k + 1)) *
                  Integer(2 * r - k - 1);
    Integer den = pow2(static_cast<unsigned long>(2 * r)) * factorial(static_cast<unsigned long>(h)) *
                  factorial(static_cast<unsigned long>(h)) * factorial(static_cast<unsigned long>(r - h)) *
                  factorial(static_cast<unsigned long>(r - h));
    Rational v(num, den);
    v.canonicalize();
    return v;
  }
  const int l = k / 2;
  Integer num = factorial(static_cast<unsigned long>(2 * l)) * factorial(static_cast<unsigned long>(2 * l + 2)) *
                Integer(r - l);
  Integer den = pow2(static_cast<unsigned long>(2 * r - 1)) * factorial(static_cast<unsigned long>(l)) *
                factorial(static_cast<unsigned long>(l + 1)) * factorial(static_cast<unsigned long>(r - l)) *
                factorial(static_cast<unsigned long>(r - l - 1));
  Rational v(num, den);
  v.canonicalize();
  return -v;
}

}  // namespace detail

// Computes (A^2)''(0) three independent ways -- the series expansion, direct
// differentiation of the amplitude polynomial, and the lemma's closed form --
// and demands exact agreement.
inline LemmaBreakdown second_derivative_at_zero(const ProblemSpec& spec) {
  const int r = spec.r, k = spec.k;
  Rational series = detail::second_derivative_series(r, k);
  Rational direct = amplitude_squared(spec).derivative(2)(Rational(0));
  Rational closed = detail::second_derivative_closed_form(r, k);
  if (series != direct || direct != closed)
    throw InternalMismatch("second_derivative_at_zero: routes disagree at r=" + std::to_string(r) +
                           " k=" + std::to_string(k));

  LemmaBreakdown out;
  out.spec = spec;
  out.second_derivative = closed;
  out.M = detail::lemma_M(r, k);
  const int tmax = k / 2 + 1;
  for (int t = 1; t <= tmax; ++t) out.F_values[t] = detail::lemma_F(r, k, t);
  if (Rational(2) * out.F_values.at(1) != Rational(1))
    throw InternalMismatch("second_derivative_at_zero: 2F(1) != 1");
  if (k % 2 == 1) {
    if (Rational(2) * out.M * out.F_values.at(tmax) != closed)
      throw InternalMismatch("second_derivative_at_zero: 2MF((k+1)/2) != closed form");
    out.verdict = CenterClassification::LocalMin;
  } else {
    out.R = detail::lemma_R(r, k);
    if (Rational(2) * out.M * out.F_values.at(tmax) - *out.R != closed)
      throw InternalMismatch("second_derivative_at_zero: 2MF(l+1) - R != closed form");
    out.verdict = CenterClassification::LocalMax;
  }
  return out;
}

enum class SymmetryVerdict { Asymmetric, CenterIsLocalMax };

// Odd k: x=0 is a local minimum of the amplitude, so the maximizer is
// off-center and the extremal is asymmetric. Even k: local statement only;
// global maximality is a matter for certification.
inline SymmetryVerdict symmetry_verdict(const ProblemSpec& spec) {
  if (spec.k == 0) return SymmetryVerdict::CenterIsLocalMax;
  return second_derivative_at_zero(spec).verdict == CenterClassification::LocalMin
             ? SymmetryVerdict::Asymmetric
             : SymmetryVerdict::CenterIsLocalMax;
}

// The closed forms printed in the source for k = 4 and 6, as exact squared
// values. They disagree with the 1/A(0) recipe; both are reported, neither
// is silently "fixed".
inline std::optional<Rational> printed_lambda_squared(int r, int k) {
  if (k == 4) {
    Rational inner(Integer(3) * (Integer(4) * r * r - Integer(24) * r + 39), Integer(2) * (2 * r - 9));
    Integer pre = pow2(static_cast<unsigned long>(r - 2)) * factorial(static_cast<unsigned long>(r - 3));
    Rational v = inner / Rational(pre * pre);
    v.canonicalize();
    return v;
  }
  if (k == 6) {
    Integer rr(r);
    Integer num = Integer(192) * rr * rr * rr * rr - Integer(3456) * rr * rr * rr +
                  Integer(23372) * rr * rr - Integer(70240) * rr + 79065;
    Rational inner(num, Integer(2) * (2 * r - 13));
    Integer pre = pow2(static_cast<unsigned long>(r - 2)) * factorial(static_cast<unsigned long>(r - 4));
    Rational v = inner / Rational(pre * pre);
    v.canonicalize();
    return v;
  }
  return std::nullopt;
}

struct BestConstantResult {
  ProblemSpec spec;
  Rational lambda_squared;               // 1 / A^2(0), exact
  std::string lambda_decimal;            // truncated decimal rendering
  std::optional<Rational> printed_formula_squared;     // k in {4, 6} only
  std::optional<std::string> printed_formula_decimal;  // sqrt of the above
  std::optional<Rational> discrepancy_ratio_squared;   // printed^2 / recipe^2
};

// Center-based best constant lambda = A(0)^{-1}. Refuses odd k, where the
// maximum is off-center.
inline BestConstantResult best_constant(const ProblemSpec& spec, int precision = 30) {
  if (spec.k % 2 == 1)
    throw OddKCenter("best_constant: center value is not the best constant for odd k");
  auto fac = factor_amplitude(spec);
  BestConstantResult out;
  out.spec = spec;
  out.lambda_squared = Rational(1) / fac.p_poly(Rational(0));
  out.lambda_decimal = sqrt_decimal_string(out.lambda_squared, precision);
  if (auto printed = printed_lambda_squared(spec.r, spec.k)) {
    out.printed_formula_squared = *printed;
    out.printed_formula_decimal = sqrt_decimal_string(*printed, precision);
    out.discrepancy_ratio_squared = *printed / out.lambda_squared;
  }
  return out;
}

// Truncation of the extremal series sum_{n=r}^{N} (n+1/2) Q_n^{(n+k-r)}(x) Q_n^{(n-r)}(t),
// returned as an exact polynomial in t.
inline Poly extremal_series_truncated(const ProblemSpec& spec, const Rational& x, int n_max) {
  if (n_max < spec.r) throw std::invalid_argument("extremal_series_truncated: need N >= r");
  if (!(abs(x) < 1)) throw std::invalid_argument("extremal_series_truncated: need |x| < 1");
  Poly total;
  for (int n = spec.r; n <= n_max; ++n) {
    Poly qn = rodrigues_poly(n);
    Rational weight = Rational(2 * n + 1, 2) * qn.derivative(n + spec.k - spec.r)(x);
    total = total + weight * qn.derivative(n - spec.r);
  }
  return total;
}

}  // namespace sharpembed

#endif
