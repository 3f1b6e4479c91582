#ifndef SHARPEMBED_ORACLE_HPP
#define SHARPEMBED_ORACLE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sharpembed/amplitude.hpp"
#include "sharpembed/poly.hpp"

namespace sharpembed {

// Classical Legendre polynomials L_0 .. L_{count-1} on [-1, 1], by the
// three-term recurrence.
inline std::vector<Poly> legendre_basis(int count) {
  std::vector<Poly> l;
  l.reserve(static_cast<std::size_t>(count));
  if (count >= 1) l.push_back(Poly::constant(Rational(1)));
  if (count >= 2) l.push_back(Poly({Rational(0), Rational(1)}));
  Poly x({Rational(0), Rational(1)});
  for (int n = 1; n + 1 < count; ++n)
    l.push_back(Rational(1, n + 1) * (Rational(2 * n + 1) * (x * l[static_cast<std::size_t>(n)]) -
                                      Rational(n) * l[static_cast<std::size_t>(n) - 1]));
  return l;
}

namespace detail {

inline Rational integrate(const Poly& p, const Rational& lo, const Rational& hi) {
  std::vector<Rational> anti(p.coeffs().size() + 1, Rational(0));
  for (int i = 0; i <= p.degree(); ++i) anti[static_cast<std::size_t>(i) + 1] = p.coeff(i) / Rational(i + 1);
  Poly a(std::move(anti));
  return a(hi) - a(lo);
}

// The evaluation kernel phi_x(s) = (x - s)^{r-k-1} / (r-k-1)! as a polynomial
// in s (supported on [-1, x]).
inline Poly evaluation_kernel(const ProblemSpec& spec, const Rational& x) {
  const int d = spec.r - spec.k - 1;
  Poly lin({x, Rational(-1)});  // x - s
  Rational scale(Integer(1), factorial(static_cast<unsigned long>(d)));
  scale.canonicalize();
  return scale * Poly::pow(lin, static_cast<unsigned long>(d));
}

}  // namespace detail

// First-principles amplitude: A^2(x) is the squared distance from the
// evaluation kernel phi_x to the span of polynomials of degree < r (the span
// of the right-endpoint boundary constraints). With the Legendre basis the
// projection decomposes into independent terms:
//   A^2 = ||phi||^2 - sum_{j<r} (2j+1)/2 <phi, L_j>^2,
// all inner products being exact integrals over [-1, x]. No reference to the
// closed-form amplitude anywhere.
inline Rational oracle_amplitude_squared(const ProblemSpec& spec, const Rational& x) {
  if (!(abs(x) < 1)) throw std::invalid_argument("oracle_amplitude_squared: need |x| < 1");
  Poly phi = detail::evaluation_kernel(spec, x);
  Rational total = detail::integrate(phi * phi, Rational(-1), x);
  auto basis = legendre_basis(spec.r);
  for (int j = 0; j < spec.r; ++j) {
    Rational inner = detail::integrate(phi * basis[static_cast<std::size_t>(j)], Rational(-1), x);
    total -= Rational(2 * j + 1, 2) * inner * inner;
  }
  return total;
}

struct ScanResult {
  double x_star = 0;
  double amplitude = 0;
  double amplitude_squared = 0;
};

// Floating-point maximizer of the amplitude: dense scan of the exact
// polynomial on a symmetric grid containing 0, then golden-section
// refinement of the best bracket. Non-rigorous by construction. Ties are
// broken toward the largest |x|, then the positive sign.
inline ScanResult argmax_scan(const ProblemSpec& spec, int grid_points = 1025, double refine_tolerance = 1e-10) {
  if (grid_points < 64) throw std::invalid_argument("argmax_scan: need grid_points >= 64");
  if (grid_points % 2 == 0) ++grid_points;  // keep 0 on the grid
  Poly a2 = amplitude_squared(spec);
  const double h = 2.0 / (grid_points + 1);
  double best_x = 0, best_v = -1;
  for (int i = 0; i < grid_points; ++i) {
    double x = -1.0 + (i + 1) * h;
    double v = a2.eval_double(x);
    bool better = v > best_v + 1e-13;
    bool tie = std::abs(v - best_v) <= 1e-13;
    if (better || (tie && (std::abs(x) > std::abs(best_x) + 1e-15 ||
                           (std::abs(std::abs(x) - std::abs(best_x)) <= 1e-15 && x > best_x)))) {
      best_v = v;
      best_x = x;
    }
  }
  double lo = std::max(-1.0, best_x - h), hi = std::min(1.0, best_x + h);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = a2.eval_double(c), fd = a2.eval_double(d);
  while (b - a > refine_tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = a2.eval_double(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = a2.eval_double(d);
    }
  }
  ScanResult out;
  out.x_star = 0.5 * (a + b);
  // the search can wander O(1e-8) across the flat top of a quadratic max in
  // doubles; snap well below the asymmetry scale
  if (std::abs(out.x_star) < 1e-7) out.x_star = 0;
  out.amplitude_squared = a2.eval_double(out.x_star);
  out.amplitude = std::sqrt(std::max(0.0, out.amplitude_squared));
  return out;
}

// lambda ~ 1/A(x*): numerical, used for odd k and as a sanity channel.
inline double best_constant_via_scan(const ProblemSpec& spec, int grid_points = 1025,
                                     double refine_tolerance = 1e-10) {
  return 1.0 / argmax_scan(spec, grid_points, refine_tolerance).amplitude;
}

}  // namespace sharpembed

#endif
