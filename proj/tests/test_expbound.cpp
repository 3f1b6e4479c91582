#include <catch2/catch_amalgamated.hpp>

#include "sharpembed/expbound.hpp"

using namespace sharpembed;

TEST_CASE("partial-sum bound examples") {
  CHECK(exp_upper_bound(Rational(0), 1) == 1);
  CHECK(exp_upper_bound(Rational(0), 30) == 1);
  CHECK(exp_upper_bound(Rational(1), 2) == Rational(2, 5));
}

TEST_CASE("twenty terms reach 1e-15 of exp(-1)") {
  Rational u = exp_upper_bound(Rational(1), 20);
  Rational l = exp_lower_bound(Rational(1), 40);
  CHECK(u >= l);
  CHECK(u - l < Rational(1, Integer(1000000000000000L)));  // bracket width < 1e-15
  // e^{-1} = 0.36787944117144232... ; the bracket must straddle a 9-digit truncation
  Rational approx(367879441, 1000000000);
  CHECK(l <= approx + Rational(1, 1000000000));
  CHECK(u >= approx);
}

TEST_CASE("monotone non-increasing in the term count") {
  for (const Rational& t : {Rational(1, 2), Rational(3), Rational(27, 4)}) {
    Rational prev = exp_upper_bound(t, 1);
    for (unsigned m = 2; m <= 40; ++m) {
      Rational cur = exp_upper_bound(t, m);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("upper bound dominates a 50-digit enclosure of exp(-t)") {
  // the certified lower bound with many terms is within 10^{-50} of exp(-t)
  for (const Rational& t : {Rational(1, 10), Rational(1), Rational(7, 2), Rational(12)}) {
    Rational tight_lower = exp_lower_bound(t, 200);
    for (unsigned m : {1u, 2u, 5u, 20u, 64u}) {
      CHECK(exp_upper_bound(t, m) >= tight_lower);
    }
    Rational width = exp_upper_bound(t, 200) - tight_lower;
    CHECK(width < Rational(Integer(1), int_pow(Integer(10), 50)));
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(exp_upper_bound(Rational(-1), 5), std::invalid_argument);
  CHECK_THROWS_AS(exp_upper_bound(Rational(1), 0), std::invalid_argument);
  CHECK_THROWS_AS(exp_lower_bound(Rational(10), 5), std::invalid_argument);
}
