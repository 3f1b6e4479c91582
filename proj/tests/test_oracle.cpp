#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "sharpembed/oracle.hpp"

using namespace sharpembed;

TEST_CASE("legendre basis") {
  auto l = legendre_basis(4);
  REQUIRE(l.size() == 4);
  CHECK(l[2] == Poly({Rational(-1, 2), Rational(0), Rational(3, 2)}));
  CHECK(l[3] == Poly({Rational(0), Rational(-3, 2), Rational(0), Rational(5, 2)}));
  // orthogonality with the (2j+1)/2 normalization
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Rational ip = detail::integrate(l[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(j)],
                                      Rational(-1), Rational(1));
      CHECK(ip == (i == j ? Rational(2, 2 * i + 1) : Rational(0)));
    }
}

TEST_CASE("oracle spot values") {
  CHECK(oracle_amplitude_squared(ProblemSpec(2, 1), Rational(0)) == Rational(1, 8));
  CHECK(oracle_amplitude_squared(ProblemSpec(3, 2), Rational(0)) == Rational(1, 8));
  CHECK(oracle_amplitude_squared(ProblemSpec(5, 4), Rational(0)) == Rational(9, 128));
  CHECK_THROWS_AS(oracle_amplitude_squared(ProblemSpec(2, 1), Rational(1)), std::invalid_argument);
}

TEST_CASE("oracle agrees with the closed form everywhere sampled") {
  const Rational xs[] = {Rational(0),      Rational(1, 4),  Rational(-1, 4), Rational(1, 2),
                         Rational(-1, 2),  Rational(3, 4),  Rational(-3, 4), Rational(9, 10),
                         Rational(-19, 20)};
  for (int r = 1; r <= 10; ++r)
    for (int k = 0; k < r; ++k) {
      Poly a2 = amplitude_squared(ProblemSpec(r, k));
      for (const auto& x : xs) CHECK(a2(x) == oracle_amplitude_squared(ProblemSpec(r, k), x));
    }
}

TEST_CASE("argmax scan at (2,1)") {
  auto res = argmax_scan(ProblemSpec(2, 1));
  CHECK(std::abs(std::abs(res.x_star) - 1.0 / std::sqrt(3.0)) < 1e-6);
  CHECK(std::abs(res.amplitude_squared - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("argmax scan snaps even-k maximizer to the center") {
  for (auto [r, k] : {std::pair{3, 2}, {5, 4}, {7, 6}}) {
    auto res = argmax_scan(ProblemSpec(r, k));
    CHECK(res.x_star == 0.0);
  }
}

TEST_CASE("odd k maximizer is off center") {
  for (int r = 2; r <= 10; ++r)
    for (int k = 1; k < r; k += 2) {
      auto res = argmax_scan(ProblemSpec(r, k));
      CHECK(std::abs(res.x_star) > 1e-3);
    }
}

TEST_CASE("scan-based constant matches the center recipe for even k") {
  auto bc = best_constant(ProblemSpec(5, 4));
  double exact = std::sqrt(128.0 / 9.0);
  CHECK(std::abs(best_constant_via_scan(ProblemSpec(5, 4)) - exact) < 1e-9);
  CHECK(bc.lambda_squared == Rational(128, 9));
}
