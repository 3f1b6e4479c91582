#ifndef SHARPEMBED_ROOTS_HPP
#define SHARPEMBED_ROOTS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharpembed/poly.hpp"

namespace sharpembed {

struct RootBracket {
  // Bracket where positivity fails: it contains a real root, or is a single
  // point with a nonpositive value.
  Rational lo, hi;
};

struct PositivityVerdict {
  bool proven = false;
  std::string method;  // "coeff-shift" or "sturm"
  std::optional<RootBracket> witness;  // set when disproven
};

namespace detail {

// Divides out the rational content, keeping the sign of the leading
// coefficient. Controls coefficient growth in the Euclidean chains.
inline Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  Integer g(0), l(1);
  for (const auto& c : p.coeffs()) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational scale{l, g};
  scale.canonicalize();
  return scale * p;
}

inline Poly poly_gcd(Poly a, Poly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = b;
    b = primitive_part(r);
  }
  return a;
}

}  // namespace detail

// Sturm chain of the square-free part of p.
inline std::vector<Poly> sturm_chain(const Poly& p) {
  Poly sf = p;
  if (p.degree() >= 1) {
    Poly g = detail::poly_gcd(p, p.derivative());
    if (g.degree() >= 1) sf = p.divide_exact(g);
  }
  std::vector<Poly> chain{sf};
  if (sf.degree() >= 1) {
    chain.push_back(sf.derivative());
    while (chain.back().degree() >= 1) {
      Poly r = chain[chain.size() - 2].divmod(chain.back()).second;
      if (r.is_zero()) break;
      chain.push_back(detail::primitive_part(-r));
    }
  }
  return chain;
}

inline int sign_variations_at(const std::vector<Poly>& chain, const Rational& x) {
  int count = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Number of distinct real roots of p in (a, b].
inline int count_roots(const std::vector<Poly>& chain, const Rational& a, const Rational& b) {
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

// All real roots lie strictly below this bound.
inline Rational cauchy_root_bound(const Poly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  Rational lead = abs(p.coeff(p.degree()));
  for (int i = 0; i < p.degree(); ++i) {
    Rational q = abs(p.coeff(i)) / lead;
    if (q > m) m = q;
  }
  return m + 1;
}

namespace detail {

// Shrinks (a, b] (known to contain >= 1 root) to a bracket containing
// exactly one root, bisecting a bounded number of times.
inline RootBracket isolate_one_root(const std::vector<Poly>& chain, Rational a, Rational b) {
  for (int iter = 0; iter < 128; ++iter) {
    int n = count_roots(chain, a, b);
    if (n <= 1 && iter >= 8) break;
    Rational mid = (a + b) / 2;
    if (sgn(chain.front()(mid)) == 0) return {mid, mid};
    if (count_roots(chain, a, mid) >= 1)
      b = mid;
    else
      a = mid;
  }
  return {a, b};
}

}  // namespace detail

// Decides whether p(t) > 0 for all t >= threshold. Cheap route first: after
// shifting t -> threshold + s, all-nonnegative coefficients with positive
// constant term settle it. Sturm-based root counting is the complete fallback.
inline PositivityVerdict positivity_on_ray(const Poly& p, const Rational& threshold) {
  if (p.is_zero()) throw std::invalid_argument("positivity_on_ray: zero polynomial");
  Poly shifted = p.shift(threshold);
  bool all_nonneg = sgn(shifted.coeff(0)) > 0;
  if (all_nonneg)
    for (const auto& c : shifted.coeffs())
      if (sgn(c) < 0) {
        all_nonneg = false;
        break;
      }
  if (all_nonneg) return {true, "coeff-shift", std::nullopt};

  if (sgn(p(threshold)) <= 0) return {false, "sturm", RootBracket{threshold, threshold}};
  if (p.degree() >= 1 && sgn(p.coeff(p.degree())) < 0) {
    // negative at infinity: a root is beyond every positive point
    Rational b = cauchy_root_bound(p);
    if (b <= threshold) b = threshold + 1;
    auto chain = sturm_chain(p);
    return {false, "sturm", detail::isolate_one_root(chain, threshold, b)};
  }
  Rational b = cauchy_root_bound(p);
  if (b <= threshold) return {true, "sturm", std::nullopt};
  auto chain = sturm_chain(p);
  if (count_roots(chain, threshold, b) == 0) return {true, "sturm", std::nullopt};
  return {false, "sturm", detail::isolate_one_root(chain, threshold, b)};
}

// Decides whether p > 0 on [0, lo] and on [hi, infinity).
inline PositivityVerdict positivity_outside_interval(const Poly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("positivity_outside_interval: zero polynomial");
  if (!(Rational(0) <= lo && lo < hi)) throw std::invalid_argument("positivity_outside_interval: need 0 <= lo < hi");
  if (sgn(p(Rational(0))) <= 0) return {false, "sturm", RootBracket{Rational(0), Rational(0)}};
  if (sgn(p(lo)) <= 0) return {false, "sturm", RootBracket{lo, lo}};
  auto chain = sturm_chain(p);
  if (count_roots(chain, Rational(0), lo) != 0)
    return {false, "sturm", detail::isolate_one_root(chain, Rational(0), lo)};
  auto tail = positivity_on_ray(p, hi);
  tail.method = "sturm";
  return tail;
}

}  // namespace sharpembed

#endif
