#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "sharpembed/roots.hpp"

using namespace sharpembed;

TEST_CASE("ray positivity: quadratic with roots below the threshold") {
  // 13r^2 - 96r + 160, threshold 5: shifted form 13s^2 + 34s + 5 settles it
  Poly p({Rational(160), Rational(-96), Rational(13)});
  auto v = positivity_on_ray(p, Rational(5));
  CHECK(v.proven);
  CHECK(v.method == "coeff-shift");
  CHECK(p.shift(Rational(5)) == Poly({Rational(5), Rational(34), Rational(13)}));
}

TEST_CASE("ray positivity: root beyond the threshold is bracketed") {
  // 10 - r is positive at the threshold but negative at infinity
  Poly p({Rational(10), Rational(-1)});
  auto v = positivity_on_ray(p, Rational(5));
  REQUIRE_FALSE(v.proven);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->lo <= Rational(10));
  CHECK(v.witness->hi >= Rational(10));
}

TEST_CASE("ray positivity: nonpositive at the threshold gives a point witness") {
  Poly p({Rational(-10), Rational(1)});  // r - 10
  auto v = positivity_on_ray(p, Rational(5));
  REQUIRE_FALSE(v.proven);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->lo == Rational(5));
  CHECK(v.witness->hi == Rational(5));
}

TEST_CASE("ray positivity: needs the sturm fallback") {
  // (r-1)^2 + 1/10 > 0 everywhere but has a negative coefficient after the shift
  Poly p({Rational(11, 10), Rational(-2), Rational(1)});
  auto v = positivity_on_ray(p, Rational(0));
  CHECK(v.proven);
  CHECK(v.method == "sturm");
}

TEST_CASE("ray positivity: touching root disproves strict positivity") {
  Poly p({Rational(4), Rational(-4), Rational(1)});  // (r-2)^2
  auto v = positivity_on_ray(p, Rational(0));
  REQUIRE_FALSE(v.proven);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->lo <= Rational(2));
  CHECK(v.witness->hi >= Rational(2));
}

TEST_CASE("positivity outside an interval") {
  // (y-1)(y-2) with both roots inside [1/2, 3]
  Poly p({Rational(2), Rational(-3), Rational(1)});
  CHECK(positivity_outside_interval(p, Rational(1, 2), Rational(3)).proven);
  CHECK_FALSE(positivity_outside_interval(p, Rational(3, 2), Rational(3)).proven);
  CHECK_FALSE(positivity_outside_interval(p, Rational(1, 2), Rational(3, 2)).proven);
}

TEST_CASE("ray positivity agrees with a dense sign scan (randomized)") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> deg(1, 8);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::uniform_int_distribution<long> thr_num(0, 8);
  int disproven_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = Rational(coef(rng));
    Poly p(std::move(c));
    if (p.is_zero()) continue;
    Rational thr(thr_num(rng));
    auto v = positivity_on_ray(p, thr);
    // scan [thr, thr+100] on a fine rational grid
    bool negative_sample = false;
    Rational neg_at;
    const int samples = 10000;
    for (int i = 0; i <= samples; ++i) {
      Rational x = thr + Rational(i, 100);
      if (sgn(p(x)) <= 0) {
        negative_sample = true;
        neg_at = x;
        break;
      }
    }
    if (v.proven) {
      INFO("claimed positive but sample <= 0 at " << to_fraction_string(neg_at));
      CHECK_FALSE(negative_sample);
    } else {
      ++disproven_seen;
      REQUIRE(v.witness.has_value());
      CHECK(v.witness->lo >= thr);
      // the bracket cannot be strictly positive at both ends with no root:
      // either an endpoint is nonpositive or the signs differ
      int slo = sgn(p(v.witness->lo));
      int shi = sgn(p(v.witness->hi));
      bool plausible = slo <= 0 || shi <= 0 || slo != shi || v.witness->lo == v.witness->hi;
      if (!plausible) {
        // even-multiplicity root strictly inside; verify by derivative sign change
        auto chain = sturm_chain(p);
        CHECK(count_roots(chain, v.witness->lo, v.witness->hi) >= 1);
      }
    }
  }
  CHECK(disproven_seen > 20);  // the generator must exercise both branches
}
