#ifndef SHARPEMBED_EXPBOUND_HPP
#define SHARPEMBED_EXPBOUND_HPP

#include <stdexcept>

#include "sharpembed/rational.hpp"

namespace sharpembed {

namespace detail {

// Partial Taylor sum of e^t: sum_{i=0}^{terms} t^i/i!. A lower bound on e^t
// for t >= 0.
inline Rational exp_partial_sum(const Rational& t, unsigned terms) {
  Rational sum(1), term(1);
  for (unsigned i = 1; i <= terms; ++i) {
    term *= t / Rational(i);
    sum += term;
  }
  return sum;
}

}  // namespace detail

// Rigorous rational upper bound on e^{-t}, t >= 0: reciprocal of the partial
// Taylor sum of e^t. Non-increasing as terms grows.
inline Rational exp_upper_bound(const Rational& t, unsigned terms) {
  if (sgn(t) < 0) throw std::invalid_argument("exp_upper_bound: negative argument");
  if (terms < 1) throw std::invalid_argument("exp_upper_bound: need terms >= 1");
  return Rational(1) / detail::exp_partial_sum(t, terms);
}

// Rigorous rational lower bound on e^{-t}, t >= 0: reciprocal of an upper
// bound on e^t (partial sum plus a geometric tail cap, valid for t < terms+2).
inline Rational exp_lower_bound(const Rational& t, unsigned terms) {
  if (sgn(t) < 0) throw std::invalid_argument("exp_lower_bound: negative argument");
  if (t >= Rational(terms + 2)) throw std::invalid_argument("exp_lower_bound: need terms + 2 > t");
  Rational sum(1), term(1);
  for (unsigned i = 1; i <= terms; ++i) {
    term *= t / Rational(i);
    sum += term;
  }
  Rational tail = term * (t / Rational(terms + 1)) / (Rational(1) - t / Rational(terms + 2));
  return Rational(1) / (sum + tail);
}

}  // namespace sharpembed

#endif
