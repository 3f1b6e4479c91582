#ifndef SHARPEMBED_FIXTURE_HPP
#define SHARPEMBED_FIXTURE_HPP

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sharpembed/poly.hpp"

namespace sharpembed {

struct FixtureMissing : std::runtime_error {
  explicit FixtureMissing(const std::string& what) : std::runtime_error(what) {}
};

struct FixtureInvalid : std::runtime_error {
  explicit FixtureInvalid(const std::string& what) : std::runtime_error(what) {}
};

struct MeshBand {
  int r_min = 0;
  int r_max = 0;
  long points = 0;
};

// The certification data for one k: envelope polynomials in y = r*x, the
// root bracket [c1, c2], the large-r threshold r0 with exponential rate
// alpha, the mesh schedule, and the required margin.
struct EnvelopeFixture {
  int k = 0;
  Poly ptilde;        // lower envelope of -P1, in y
  Poly qtilde_plus;   // even upper envelope, in y
  Poly qtilde_minus;  // odd lower envelope, in y
  Rational c1, c2;
  int r0 = 0;
  Rational alpha;
  long large_r_points = 0;
  std::vector<MeshBand> small_r_schedule;
  Rational margin;

  long points_for_r(int r) const {
    for (const auto& band : small_r_schedule)
      if (band.r_min <= r && r <= band.r_max) return band.points;
    return small_r_schedule.empty() ? 256 : small_r_schedule.back().points;
  }

  void validate() const {
    if (k < 1 || k % 2 != 0) throw FixtureInvalid("fixture: k must be a positive even integer");
    if (!(Rational(0) <= c1 && c1 < c2)) throw FixtureInvalid("fixture: need 0 <= c1 < c2");
    if (r0 < k + 1) throw FixtureInvalid("fixture: need r0 >= k+1");
    if (sgn(margin) <= 0) throw FixtureInvalid("fixture: margin must be positive");
    if (large_r_points < 2) throw FixtureInvalid("fixture: large_r_points too small");
    for (int i = 0; i <= qtilde_plus.degree(); ++i)
      if (i % 2 == 1 && sgn(qtilde_plus.coeff(i)) != 0)
        throw FixtureInvalid("fixture: qtilde_plus has a nonzero odd-degree term");
    for (int i = 0; i <= qtilde_minus.degree(); ++i)
      if (i % 2 == 0 && sgn(qtilde_minus.coeff(i)) != 0)
        throw FixtureInvalid("fixture: qtilde_minus has a nonzero even-degree term");
    for (const Poly* q : {&qtilde_plus, &qtilde_minus})
      for (const auto& c : q->coeffs())
        if (sgn(c) < 0) throw FixtureInvalid("fixture: envelope coefficients must be nonnegative");
    // alpha <= 2 - (2k+1)/r0, the validity condition of the exponential majorant
    if (alpha > Rational(2) - Rational(2 * k + 1, r0))
      throw FixtureInvalid("fixture: alpha exceeds 2 - (2k+1)/r0");
  }
};

// Per-x-degree coefficient tables of the scaled -P1 and of Q+/Q- as exact
// polynomials in r; reference data for the fidelity checks (k = 4, 6 only).
struct CoefficientTables {
  std::vector<Poly> minus_p1_in_r;  // index = x-degree
  std::vector<Poly> qplus_in_r;
  std::vector<Poly> qminus_in_r;
};

inline EnvelopeFixture builtin_fixture(int k) {
  EnvelopeFixture f;
  if (k == 4) {
    f.k = 4;
    f.ptilde = Poly({Rational(45), Rational(-350), Rational(112), Rational(-228), Rational(3)});
    f.qtilde_plus = Poly({Rational(1), Rational(0), Rational(19), Rational(0), Rational(17, 9)});
    f.qtilde_minus = Poly({Rational(0), Rational(7), Rational(0), Rational(26, 3)});
    f.c1 = Rational(1, 10);
    f.c2 = Rational(76);
    f.r0 = 50;
    f.alpha = Rational(9, 5);
    f.large_r_points = 1L << 11;
    f.small_r_schedule = {{5, 9, 1L << 7}, {10, 21, 1L << 8}, {22, 44, 1L << 9}, {45, 50, 1L << 10}};
    f.margin = Rational(1, 100000);
  } else if (k == 6) {
    f.k = 6;
    f.ptilde = Poly({Rational(1575), Rational(-13000), Rational(8000), Rational(-22000), Rational(1000),
                     Rational(-1200), Rational(4)});
    f.qtilde_plus = Poly({Rational(1), Rational(0), Rational(1982, 45), Rational(0), Rational(202, 9),
                          Rational(0), Rational(74, 225)});
    f.qtilde_minus = Poly({Rational(0), Rational(104, 9), Rational(0), Rational(716, 15), Rational(0),
                           Rational(172, 45)});
    f.c1 = Rational(1, 10);
    f.c2 = Rational(300);
    f.r0 = 410;
    f.alpha = Rational(39, 20);
    f.large_r_points = 1L << 15;
    f.small_r_schedule = {{7, 42, 1L << 11},
                          {43, 86, 1L << 12},
                          {87, 173, 1L << 13},
                          {174, 348, 1L << 14},
                          {349, 410, 1L << 15}};
    f.margin = Rational(1, 100000);
  } else {
    throw FixtureMissing("no built-in fixture for k=" + std::to_string(k) +
                         "; supply one with --fixture");
  }
  f.validate();
  return f;
}

inline std::optional<CoefficientTables> builtin_tables(int k) {
  auto P = [](std::vector<long> cs) {
    std::vector<Rational> v;
    v.reserve(cs.size());
    for (long c : cs) v.emplace_back(c);
    return Poly(std::move(v));
  };
  if (k == 4) {
    CoefficientTables t;
    t.minus_p1_in_r = {P({45}),
                       P({540, -240}),
                       P({1134, -1224, 312}),
                       P({540, -1056, 656, -128}),
                       P({45, -168, 200, -96, 16})};
    t.qplus_in_r = {P({1}),
                    Poly(),
                    Poly({Rational(126), Rational(-112), Rational(56, 3)}),
                    Poly(),
                    Poly({Rational(9), Rational(-32), Rational(104, 3), Rational(-128, 9), Rational(16, 9)})};
    t.qminus_in_r = {Poly(),
                     P({-36, 8}),
                     Poly(),
                     Poly({Rational(-84), Rational(440, 3), Rational(-688, 9), Rational(32, 3)})};
    return t;
  }
  if (k == 6) {
    CoefficientTables t;
    t.minus_p1_in_r = {P({1575}),
                       P({40950, -12600}),
                       P({225225, -156240, 26460}),
                       P({386100, -449040, 170640, -21120}),
                       P({225225, -402240, 260760, -72960, 7440}),
                       P({40950, -109560, 111792, -54528, 12768, -1152}),
                       P({1575, -6960, 11212, -8832, 3664, -768, 64})};
    t.qplus_in_r = {P({1}),
                    Poly(),
                    P({715, -396, 44}),
                    Poly(),
                    Poly({Rational(1287), Rational(-10584, 5), Rational(6104, 5), Rational(-288), Rational(112, 5)}),
                    Poly(),
                    Poly({Rational(13), Rational(-836, 15), Rational(19228, 225), Rational(-1568, 25),
                          Rational(5296, 225), Rational(-64, 15), Rational(64, 225)})};
    t.qminus_in_r = {Poly(),
                     P({-78, 12}),
                     Poly(),
                     Poly({Rational(-1716), Rational(26216, 15), Rational(-2736, 5), Rational(736, 15)}),
                     Poly(),
                     Poly({Rational(-286), Rational(10852, 15), Rational(-17104, 25), Rational(22496, 75),
                           Rational(-1504, 25), Rational(64, 15)})};
    return t;
  }
  return std::nullopt;
}

inline nlohmann::ordered_json fixture_to_json(const EnvelopeFixture& f) {
  nlohmann::ordered_json j;
  j["k"] = f.k;
  j["ptilde"] = f.ptilde.to_fraction_strings();
  j["qtilde_plus"] = f.qtilde_plus.to_fraction_strings();
  j["qtilde_minus"] = f.qtilde_minus.to_fraction_strings();
  j["c1"] = to_fraction_string(f.c1);
  j["c2"] = to_fraction_string(f.c2);
  j["r0"] = f.r0;
  j["alpha"] = to_fraction_string(f.alpha);
  j["large_r_points"] = f.large_r_points;
  nlohmann::ordered_json sched = nlohmann::ordered_json::array();
  for (const auto& band : f.small_r_schedule)
    sched.push_back({{"r_min", band.r_min}, {"r_max", band.r_max}, {"points", band.points}});
  j["small_r_schedule"] = sched;
  j["margin"] = to_fraction_string(f.margin);
  return j;
}

inline EnvelopeFixture fixture_from_json(const nlohmann::json& j) {
  EnvelopeFixture f;
  auto poly_of = [&](const char* key) {
    return Poly::from_fraction_strings(j.at(key).get<std::vector<std::string>>());
  };
  f.k = j.at("k").get<int>();
  f.ptilde = poly_of("ptilde");
  f.qtilde_plus = poly_of("qtilde_plus");
  f.qtilde_minus = poly_of("qtilde_minus");
  f.c1 = parse_rational(j.at("c1").get<std::string>());
  f.c2 = parse_rational(j.at("c2").get<std::string>());
  f.r0 = j.at("r0").get<int>();
  f.alpha = parse_rational(j.at("alpha").get<std::string>());
  f.large_r_points = j.at("large_r_points").get<long>();
  for (const auto& band : j.at("small_r_schedule"))
    f.small_r_schedule.push_back(
        {band.at("r_min").get<int>(), band.at("r_max").get<int>(), band.at("points").get<long>()});
  f.margin = parse_rational(j.at("margin").get<std::string>());
  f.validate();
  return f;
}

inline EnvelopeFixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureMissing("cannot open fixture file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return fixture_from_json(j);
  } catch (const FixtureInvalid&) {
    throw;
  } catch (const std::exception& e) {
    throw FixtureInvalid("malformed fixture file " + path + ": " + e.what());
  }
}

}  // namespace sharpembed

#endif
