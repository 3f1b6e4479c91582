#include <catch2/catch_amalgamated.hpp>

#include "sharpembed/amplitude.hpp"

using namespace sharpembed;

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ProblemSpec(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(ProblemSpec(2, -1), std::invalid_argument);
  CHECK_NOTHROW(ProblemSpec(1, 0));
}

TEST_CASE("rodrigues kernel and its derivatives at zero") {
  CHECK(rodrigues_poly(0) == Poly::constant(Rational(1)));
  CHECK(rodrigues_poly(1) == Poly({Rational(1, 2), Rational(0), Rational(-1, 2)}));
  // closed form spot values
  CHECK(rodrigues_derivative_at_zero(1, 2) == Rational(-1));
  CHECK(rodrigues_derivative_at_zero(5, 4) == Rational(1, 16));
  CHECK(rodrigues_derivative_at_zero(4, 3) == Rational(0));
  for (int n = 0; n <= 10; ++n)
    for (int s = 0; s <= 2 * n + 2; ++s)
      CHECK(rodrigues_derivative_at_zero(n, s) == rodrigues_poly(n).derivative(s)(Rational(0)));
}

TEST_CASE("lowest-order amplitudes in closed form") {
  // k = 0: A^2 = (1-x^2)/2 at r = 1
  CHECK(amplitude_squared(ProblemSpec(1, 0)) == Poly({Rational(1, 2), Rational(0), Rational(-1, 2)}));
  // r = 2, k = 1: A^2 = (1-x^2)/2 - (3/8)(1-x^2)^2
  Poly u({Rational(1), Rational(0), Rational(-1)});
  Poly expected = Rational(1, 2) * u - Rational(3, 8) * (u * u);
  CHECK(amplitude_squared(ProblemSpec(2, 1)) == expected);
  CHECK(expected(Rational(1, 2)) == Rational(21, 128));
}

TEST_CASE("factorization at (5,4)") {
  auto fac = factor_amplitude(ProblemSpec(5, 4));
  CHECK(fac.exponent == 1);
  CHECK(fac.p_poly ==
        Rational(1, 128) * Poly({Rational(9), Rational(-36), Rational(294), Rational(-644), Rational(441)}));
  CHECK(fac.p1_poly(Rational(0)) == Rational(-45, 128));
}

TEST_CASE("factorization identity holds broadly") {
  Poly x2({Rational(0), Rational(0), Rational(1)});
  Poly one_minus_x2({Rational(1), Rational(0), Rational(-1)});
  for (int r = 1; r <= 8; ++r)
    for (int k = 0; k < r; ++k) {
      auto fac = factor_amplitude(ProblemSpec(r, k));
      CHECK(fac.exponent == 2 * r - 2 * k - 1);
      CHECK(fac.p_poly.degree() == k);
      Poly rebuilt;
      for (int i = 0; i <= fac.p_poly.degree(); ++i)
        rebuilt = rebuilt + fac.p_poly.coeff(i) * Poly::pow(x2, static_cast<unsigned long>(i));
      rebuilt = rebuilt * Poly::pow(one_minus_x2, static_cast<unsigned long>(fac.exponent));
      CHECK(rebuilt == amplitude_squared(ProblemSpec(r, k)));
      // P1(0) = (A^2)''(0) / 2
      CHECK(Rational(2) * fac.p1_poly(Rational(0)) ==
            second_derivative_at_zero(ProblemSpec(r, k)).second_derivative);
    }
}

TEST_CASE("second derivative at zero: spot values and sign law") {
  CHECK(second_derivative_at_zero(ProblemSpec(2, 1)).second_derivative == Rational(1, 2));
  CHECK(second_derivative_at_zero(ProblemSpec(3, 2)).second_derivative == Rational(-3, 4));
  for (int r = 1; r <= 15; ++r)
    for (int k = 0; k < r; ++k) {
      auto lb = second_derivative_at_zero(ProblemSpec(r, k));
      if (k % 2 == 1) {
        CHECK(sgn(lb.second_derivative) > 0);
        CHECK(lb.verdict == CenterClassification::LocalMin);
        CHECK_FALSE(lb.R.has_value());
      } else {
        CHECK(sgn(lb.second_derivative) < 0);
        CHECK(lb.verdict == CenterClassification::LocalMax);
        CHECK(lb.R.has_value());
      }
      CHECK(Rational(2) * lb.F_values.at(1) == Rational(1));
    }
}

TEST_CASE("symmetry verdict") {
  CHECK(symmetry_verdict(ProblemSpec(1, 0)) == SymmetryVerdict::CenterIsLocalMax);
  CHECK(symmetry_verdict(ProblemSpec(2, 1)) == SymmetryVerdict::Asymmetric);
  CHECK(symmetry_verdict(ProblemSpec(5, 4)) == SymmetryVerdict::CenterIsLocalMax);
  CHECK(symmetry_verdict(ProblemSpec(6, 3)) == SymmetryVerdict::Asymmetric);
}

TEST_CASE("best constant at the center") {
  auto bc = best_constant(ProblemSpec(5, 4), 11);
  CHECK(bc.lambda_squared == Rational(128, 9));
  CHECK(bc.lambda_decimal == "3.7712361663");
  REQUIRE(bc.printed_formula_squared.has_value());
  CHECK(*bc.printed_formula_squared == Rational(57, 512));
  REQUIRE(bc.discrepancy_ratio_squared.has_value());
  CHECK(*bc.discrepancy_ratio_squared == Rational(57, 512) / Rational(128, 9));
  CHECK_THROWS_AS(best_constant(ProblemSpec(2, 1)), OddKCenter);
}

TEST_CASE("truncated extremal series parity at the center") {
  for (int r = 2; r <= 8; ++r)
    for (int k = 0; k < r; ++k) {
      Poly f = extremal_series_truncated(ProblemSpec(r, k), Rational(0), r + 6);
      int bad_parity = (k % 2 == 0) ? 1 : 0;
      for (int i = bad_parity; i <= f.degree(); i += 2) CHECK(sgn(f.coeff(i)) == 0);
    }
  CHECK_THROWS_AS(extremal_series_truncated(ProblemSpec(3, 1), Rational(0), 2), std::invalid_argument);
  CHECK_THROWS_AS(extremal_series_truncated(ProblemSpec(3, 1), Rational(1), 5), std::invalid_argument);
}
