#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "sharpembed/poly.hpp"

using namespace sharpembed;

namespace {

Poly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = Rational(num(rng), den(rng)), x.canonicalize();
  return Poly(std::move(c));
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-30, 30);
  std::uniform_int_distribution<long> den(1, 12);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  Poly a({Rational(1), Rational(0), Rational(-1)});  // 1 - x^2
  Poly b({Rational(1), Rational(0), Rational(1)});   // 1 + x^2
  CHECK(a * b == Poly({Rational(1), Rational(0), Rational(0), Rational(0), Rational(-1)}));

  Poly x2m1({Rational(-1), Rational(0), Rational(1)});
  Poly xm1({Rational(-1), Rational(1)});
  CHECK(x2m1.divide_exact(xm1) == Poly({Rational(1), Rational(1)}));

  Poly xm2({Rational(-2), Rational(1)});
  CHECK_THROWS_AS(x2m1.divide_exact(xm2), NonZeroRemainder);
}

TEST_CASE("derivative") {
  Poly p({Rational(1), Rational(0), Rational(-1)});
  CHECK(p.derivative() == Poly({Rational(0), Rational(-2)}));
  // (1-x^2)^2/8: second derivative at 0 is -1/2, fourth is 3
  Poly q = Rational(1, 8) * Poly({Rational(1), Rational(0), Rational(-2), Rational(0), Rational(1)});
  CHECK(q.derivative(2)(Rational(0)) == Rational(-1, 2));
  CHECK(q.derivative(4)(Rational(0)) == Rational(3));
  CHECK(p.derivative(5).is_zero());
}

TEST_CASE("scale_argument") {
  Poly y2({Rational(0), Rational(0), Rational(1)});
  CHECK(y2.scale_argument(Rational(3)) == Poly({Rational(0), Rational(0), Rational(9)}));
  // ptilde_4(y) at y = r x with r = 7
  Poly pt({Rational(45), Rational(-350), Rational(112), Rational(-228), Rational(3)});
  Poly scaled = pt.scale_argument(Rational(7));
  CHECK(scaled.coeff(4) == Rational(3) * 2401);
  CHECK(scaled.coeff(3) == Rational(-228) * 343);
  CHECK(scaled.coeff(1) == Rational(-350) * 7);
  CHECK(scaled.coeff(0) == 45);
  CHECK(pt.scale_argument(Rational(1)) == pt);
}

TEST_CASE("shift/evaluate consistency (randomized)") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p = random_poly(rng, 8);
    Rational a = random_rational(rng), b = random_rational(rng);
    CHECK(p(a + b) == p.shift(a)(b));
  }
}

TEST_CASE("divide then multiply reproduces the dividend (randomized)") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = random_poly(rng, 6);
    Poly b = random_poly(rng, 4);
    if (b.is_zero()) continue;
    Poly prod = a * b;
    CHECK(prod.divide_exact(b) * b == prod);
  }
}

TEST_CASE("parity and sign splits") {
  Poly p({Rational(1), Rational(-4), Rational(3), Rational(-2)});
  auto [even, odd] = p.split_by_parity();
  CHECK(even + odd == p);
  CHECK(even == Poly({Rational(1), Rational(0), Rational(3)}));
  auto [pos, neg] = p.split_by_sign();
  CHECK(pos - neg == p);
  for (const auto& c : pos.coeffs()) CHECK(sgn(c) >= 0);
  for (const auto& c : neg.coeffs()) CHECK(sgn(c) >= 0);
}

TEST_CASE("even powers to t") {
  Poly p({Rational(1), Rational(0), Rational(-2), Rational(0), Rational(1)});
  CHECK(p.even_powers_to_t() == Poly({Rational(1), Rational(-2), Rational(1)}));
  CHECK_THROWS_AS(Poly({Rational(0), Rational(1)}).even_powers_to_t(), NonZeroRemainder);
}

TEST_CASE("interpolation recovers polynomials") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    Poly p = random_poly(rng, 5);
    std::vector<std::pair<Rational, Rational>> nodes;
    for (int i = 0; i <= 7; ++i) nodes.emplace_back(Rational(i), p(Rational(i)));
    CHECK(Poly::interpolate(nodes) == p);
  }
}

TEST_CASE("string round trip and pretty form") {
  Poly p({Rational(-9, 32), Rational(0), Rational(1)});
  auto ss = p.to_fraction_strings();
  REQUIRE(ss.size() == 3);
  CHECK(ss[0] == "-9/32");
  CHECK(Poly::from_fraction_strings(ss) == p);
  CHECK(p.pretty("t") == "t^2 - 9/32");
}
