#ifndef SHARPEMBED_RATIONAL_HPP
#define SHARPEMBED_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace sharpembed {

// The universal scalar: arbitrary-precision rationals, always canonical
// (lowest terms, positive denominator). GMP keeps mpq_class canonical
// after arithmetic; parse_rational canonicalizes explicitly.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer pow2(unsigned long e) { return int_pow(Integer(2), e); }

inline Integer pow10(unsigned long e) { return int_pow(Integer(10), e); }

inline Rational rat_pow(const Rational& base, unsigned long e) {
  Rational r(1);
  Rational b = base;
  unsigned long n = e;
  while (n > 0) {
    if (n & 1UL) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

// Parses "a/b", plain integers, and decimal literals like "-0.25" or
// "1.5e-3". Result is canonical.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational q(s);  // GMP accepts "num/den"
    if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  // decimal form: [+-]digits[.digits][e[+-]digits]
  std::string digits;
  long exp10 = 0;
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  bool any = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    digits += s[i];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits += s[i];
      --exp10;
      any = true;
    }
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    exp10 += std::stol(s.substr(i + 1));
    i = s.size();
  }
  if (!any || i != s.size()) throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
  Integer num(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  Rational q(num);
  if (exp10 > 0)
    q *= Rational(pow10(static_cast<unsigned long>(exp10)));
  else if (exp10 < 0)
    q /= Rational(pow10(static_cast<unsigned long>(-exp10)));
  q.canonicalize();
  return q;
}

// Serialization: "num/den" in lowest terms, or just "num" for integers.
inline std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Largest e with 10^e <= v; v must be positive.
inline long floor_log10(const Rational& v) {
  if (sgn(v) <= 0) throw std::invalid_argument("floor_log10: nonpositive argument");
  const Integer& a = v.get_num();
  const Integer& b = v.get_den();
  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
  auto ge_pow = [&](long p) {
    // a/b >= 10^p ?
    if (p >= 0) return a >= b * pow10(static_cast<unsigned long>(p));
    return a * pow10(static_cast<unsigned long>(-p)) >= b;
  };
  while (!ge_pow(e)) --e;
  while (ge_pow(e + 1)) ++e;
  return e;
}

// Renders v with the given number of significant digits, truncated toward
// zero. Fixed-point form for moderate exponents, scientific otherwise.
inline std::string decimal_string(const Rational& v, int sig_digits = 17) {
  if (sig_digits < 1) sig_digits = 1;
  if (sgn(v) == 0) return "0";
  bool neg = sgn(v) < 0;
  Rational a = neg ? Rational(-v) : v;
  long e = floor_log10(a);
  // first sig_digits digits of a, truncated
  Integer n;
  long shift = sig_digits - 1 - e;
  if (shift >= 0)
    n = (a.get_num() * pow10(static_cast<unsigned long>(shift))) / a.get_den();
  else
    n = a.get_num() / (a.get_den() * pow10(static_cast<unsigned long>(-shift)));
  std::string d = n.get_str();
  // guard against size drift from the floor division
  while (static_cast<int>(d.size()) > sig_digits) {
    d.pop_back();
    ++e;
  }
  std::string out = neg ? "-" : "";
  if (e >= -4 && e < sig_digits) {
    if (e >= 0) {
      out += d.substr(0, static_cast<std::size_t>(e) + 1);
      if (static_cast<std::size_t>(e) + 1 < d.size()) out += "." + d.substr(static_cast<std::size_t>(e) + 1);
    } else {
      out += "0.";
      out += std::string(static_cast<std::size_t>(-e - 1), '0');
      out += d;
    }
  } else {
    out += d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    out += "e" + std::to_string(e);
  }
  return out;
}

// Decimal rendering of sqrt(v), truncated toward zero. v >= 0.
inline std::string sqrt_decimal_string(const Rational& v, int sig_digits = 30) {
  if (sgn(v) < 0) throw std::invalid_argument("sqrt_decimal_string: negative argument");
  if (sgn(v) == 0) return "0";
  long e = floor_log10(v);
  unsigned long guard = static_cast<unsigned long>(sig_digits) + 12 + static_cast<unsigned long>(e < 0 ? -e : 0);
  Integer scaled = (v.get_num() * pow10(2 * guard)) / v.get_den();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Rational approx(root, pow10(guard));
  approx.canonicalize();
  return decimal_string(approx, sig_digits);
}

}  // namespace sharpembed

#endif
