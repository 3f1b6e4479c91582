#ifndef SHARPEMBED_POLY_HPP
#define SHARPEMBED_POLY_HPP

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sharpembed/rational.hpp"

namespace sharpembed {

// Exact division left a remainder: some algebraic identity upstream is broken.
struct NonZeroRemainder : std::runtime_error {
  explicit NonZeroRemainder(const std::string& what) : std::runtime_error(what) {}
};

// Dense univariate polynomial over Rational, constant term first.
// Invariant: leading coefficient nonzero unless the polynomial is zero
// (empty coefficient vector).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const Rational& a) { return Poly({a}); }
  static Poly monomial(int degree, const Rational& a) {
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
    c.back() = a;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Rational coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& x) const {
    Rational v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
  }

  double eval_double(double x) const {
    double v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + it->get_d();
    return v;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a) { return Poly::constant(Rational(-1)) * a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Rational& s) { return s * a; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // Quotient and remainder of this / d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::invalid_argument("Poly: division by zero polynomial");
    Poly rem = *this;
    std::vector<Rational> q;
    if (degree() >= d.degree()) q.assign(static_cast<std::size_t>(degree() - d.degree()) + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      int shift = rem.degree() - d.degree();
      Rational f = rem.c_.back() / d.c_.back();
      q[static_cast<std::size_t>(shift)] = f;
      for (std::size_t i = 0; i < d.c_.size(); ++i)
        rem.c_[static_cast<std::size_t>(shift) + i] -= f * d.c_[i];
      rem.trim();
    }
    return {Poly(std::move(q)), rem};
  }

  Poly divide_exact(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw NonZeroRemainder("Poly::divide_exact: nonzero remainder of degree " + std::to_string(r.degree()));
    return q;
  }

  Poly derivative(int times = 1) const {
    if (times < 0) throw std::invalid_argument("Poly::derivative: negative order");
    Poly p = *this;
    for (int t = 0; t < times; ++t) {
      if (p.is_zero()) break;
      std::vector<Rational> c;
      c.reserve(p.c_.size());
      for (std::size_t i = 1; i < p.c_.size(); ++i) c.push_back(Rational(static_cast<long>(i)) * p.c_[i]);
      p = Poly(std::move(c));
    }
    return p;
  }

  // q with q(x) = p(x + a).
  Poly shift(const Rational& a) const {
    std::vector<Rational> c = c_;
    int n = degree();
    for (int i = 0; i < n; ++i)
      for (int j = n - 1; j >= i; --j) c[static_cast<std::size_t>(j)] += a * c[static_cast<std::size_t>(j) + 1];
    return Poly(std::move(c));
  }

  // q with q(x) = p(factor * x).
  Poly scale_argument(const Rational& factor) const {
    std::vector<Rational> c = c_;
    Rational f(1);
    for (std::size_t i = 1; i < c.size(); ++i) {
      f *= factor;
      c[i] *= f;
    }
    return Poly(std::move(c));
  }

  // For a polynomial containing only even powers of x, the polynomial q
  // with q(x^2) = p(x). Throws if an odd power has a nonzero coefficient.
  Poly even_powers_to_t() const {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i % 2 == 1) {
        if (sgn(c_[i]) != 0)
          throw NonZeroRemainder("Poly::even_powers_to_t: nonzero odd coefficient at degree " + std::to_string(i));
      } else {
        c.push_back(c_[i]);
      }
    }
    return Poly(std::move(c));
  }

  // p = even + odd, split by parity of the exponent.
  std::pair<Poly, Poly> split_by_parity() const {
    std::vector<Rational> e(c_.size(), Rational(0)), o(c_.size(), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) (i % 2 == 0 ? e[i] : o[i]) = c_[i];
    return {Poly(std::move(e)), Poly(std::move(o))};
  }

  // p = pos - neg with pos, neg having nonnegative coefficients.
  std::pair<Poly, Poly> split_by_sign() const {
    std::vector<Rational> p(c_.size(), Rational(0)), n(c_.size(), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) >= 0)
        p[i] = c_[i];
      else
        n[i] = -c_[i];
    }
    return {Poly(std::move(p)), Poly(std::move(n))};
  }

  static Poly pow(const Poly& base, unsigned long e) {
    Poly r = Poly::constant(Rational(1));
    Poly b = base;
    while (e > 0) {
      if (e & 1UL) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // Newton-form interpolation through the given nodes (distinct abscissae).
  static Poly interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
    const std::size_t n = pts.size();
    if (n == 0) return Poly();
    std::vector<Rational> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = pts[i].second;
    for (std::size_t level = 1; level < n; ++level)
      for (std::size_t i = n - 1; i >= level; --i) {
        dd[i] = (dd[i] - dd[i - 1]) / (pts[i].first - pts[i - level].first);
        if (i == level) break;
      }
    Poly result = Poly::constant(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
      Poly lin({-pts[i].first, Rational(1)});
      result = result * lin + Poly::constant(dd[i]);
    }
    return result;
  }

  std::vector<std::string> to_fraction_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& q : c_) out.push_back(to_fraction_string(q));
    return out;
  }

  static Poly from_fraction_strings(const std::vector<std::string>& ss) {
    std::vector<Rational> c;
    c.reserve(ss.size());
    for (const auto& s : ss) c.push_back(parse_rational(s));
    return Poly(std::move(c));
  }

  // Human-readable form, highest degree first, e.g. "441/128 t^4 - 161/32 t^3 + ...".
  std::string pretty(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      Rational a = coeff(i);
      if (sgn(a) == 0) continue;
      if (!out.empty())
        out += sgn(a) > 0 ? " + " : " - ";
      else if (sgn(a) < 0)
        out += "-";
      Rational mag = abs(a);
      bool unit = (mag == 1);
      if (!unit || i == 0) out += to_fraction_string(mag);
      if (i >= 1) {
        if (!unit) out += "*";
        out += var;
        if (i >= 2) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace sharpembed

#endif
