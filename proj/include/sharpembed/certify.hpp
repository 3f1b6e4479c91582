#ifndef SHARPEMBED_CERTIFY_HPP
#define SHARPEMBED_CERTIFY_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sharpembed/amplitude.hpp"
#include "sharpembed/expbound.hpp"
#include "sharpembed/fixture.hpp"
#include "sharpembed/roots.hpp"

namespace sharpembed {

// A held-out r disagreed with the interpolated coefficient polynomial:
// either the degree bound in r is wrong or the fixture is.
struct LiftMismatch : std::runtime_error {
  explicit LiftMismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class LiftTarget { MinusP1, QPlus, QMinus };

// One x-coefficient of the scaled -P1 (or of Q+/Q-) as an exact polynomial in r.
struct CoefficientInR {
  int degree_in_x = 0;
  Poly poly_in_r;
};

struct LiftResult {
  LiftTarget target = LiftTarget::MinusP1;
  std::vector<CoefficientInR> coeffs;
  std::map<int, Rational> scale_per_r;  // measured normalization scale (MinusP1 only)
};

namespace detail {

// The scaled per-r coefficient vector in t. MinusP1 is anchored so its
// constant term equals `anchor` (the fixture normalization, measured as a
// positive per-r scale); Q+/Q- use the absolute P/P(0) normalization.
inline Poly lift_sample(int r, int k, LiftTarget which, const Rational& anchor, Rational* scale_out) {
  auto fac = factor_amplitude(ProblemSpec(r, k));
  if (which == LiftTarget::MinusP1) {
    Poly v = -fac.p1_poly;
    Rational c0 = v.coeff(0);
    if (sgn(c0) <= 0)
      throw LiftMismatch("lift: -P1 constant term not positive at r=" + std::to_string(r) +
                         " (odd k or sign error)");
    Rational scale = anchor / c0;
    if (scale_out) *scale_out = scale;
    return scale * v;
  }
  Poly p = (Rational(1) / fac.p_poly.coeff(0)) * fac.p_poly;
  auto [even, odd] = p.split_by_parity();
  return which == LiftTarget::QPlus ? even : -odd;
}

}  // namespace detail

// Recovers the exact r-dependence of each x-coefficient by interpolation at
// k+2 integer values of r (the degree in r is at most k), then verifies the
// interpolant at every remaining sample plus 3 fresh values of r.
inline LiftResult lift_coefficients_in_r(int k, LiftTarget which, std::vector<int> sample_rs = {},
                                         const Rational& anchor = Rational(1)) {
  if (sample_rs.empty())
    for (int r = k + 1; r <= 2 * k + 5; ++r) sample_rs.push_back(r);
  if (static_cast<int>(sample_rs.size()) < k + 2)
    throw std::invalid_argument("lift_coefficients_in_r: need at least k+2 sample values of r");

  LiftResult out;
  out.target = which;
  std::map<int, Poly> per_r;
  for (int r : sample_rs) {
    Rational scale;
    per_r[r] = detail::lift_sample(r, k, which, anchor, &scale);
    if (which == LiftTarget::MinusP1) out.scale_per_r[r] = scale;
  }
  int r_max = *std::max_element(sample_rs.begin(), sample_rs.end());
  std::vector<int> holdout = {r_max + 1, r_max + 2, r_max + 3};

  for (int i = 0; i <= k; ++i) {
    std::vector<std::pair<Rational, Rational>> nodes;
    for (int j = 0; j < k + 2; ++j) {
      int r = sample_rs[static_cast<std::size_t>(j)];
      nodes.emplace_back(Rational(r), per_r.at(r).coeff(i));
    }
    Poly in_r = Poly::interpolate(nodes);
    if (in_r.degree() > k)
      throw LiftMismatch("lift: coefficient of x^" + std::to_string(i) + " has degree " +
                         std::to_string(in_r.degree()) + " > k in r");
    for (std::size_t j = k + 2; j < sample_rs.size(); ++j) {
      int r = sample_rs[j];
      if (in_r(Rational(r)) != per_r.at(r).coeff(i))
        throw LiftMismatch("lift: interpolant for x^" + std::to_string(i) +
                           " fails at sample r=" + std::to_string(r));
    }
    for (int r : holdout) {
      Rational scale;
      Poly v = detail::lift_sample(r, k, which, anchor, &scale);
      if (in_r(Rational(r)) != v.coeff(i))
        throw LiftMismatch("lift: interpolant for x^" + std::to_string(i) +
                           " fails at held-out r=" + std::to_string(r));
    }
    out.coeffs.push_back({i, in_r});
  }
  return out;
}

struct StageResult {
  std::string name;
  bool proven = false;
  std::string detail;
  std::optional<Rational> margin;  // exact, when the stage has one
};

// --- dominance stages ---------------------------------------------------

namespace detail {

// Per-degree difference D_i(r) must be >= 0 on [threshold, inf). An
// identically zero difference (equal coefficients) passes.
inline bool dominance_on_ray(const Poly& diff, const Rational& threshold, std::string& note) {
  if (diff.is_zero()) {
    note = "identical";
    return true;
  }
  auto v = positivity_on_ray(diff, threshold);
  note = v.proven ? v.method
                  : "fails near r in [" + decimal_string(v.witness->lo, 6) + ", " +
                        decimal_string(v.witness->hi, 6) + "]";
  return v.proven;
}

}  // namespace detail

// Every coefficient of ptilde(r x) stays below the matching coefficient of
// the scaled -P1 for all real r >= k+1, hence -P1(x) >= ptilde(r x) on x >= 0.
inline StageResult verify_ptilde_dominance(const EnvelopeFixture& f) {
  StageResult st{"ptilde_dominance", true, "", std::nullopt};
  auto lift = lift_coefficients_in_r(f.k, LiftTarget::MinusP1, {}, f.ptilde.coeff(0));
  for (int i = 0; i <= f.k; ++i) {
    Poly diff = lift.coeffs[static_cast<std::size_t>(i)].poly_in_r - Poly::monomial(i, f.ptilde.coeff(i));
    std::string note;
    bool ok = detail::dominance_on_ray(diff, Rational(f.k + 1), note);
    if (!st.detail.empty()) st.detail += "; ";
    st.detail += "x^" + std::to_string(i) + ": " + note;
    if (!ok) st.proven = false;
  }
  return st;
}

// ptilde > 0 on [0, c1] and on [c2, inf). Together with dominance this
// brackets every nonnegative root of P1 inside (c1/r, c2/r). Also spot-checks
// the sign of P1 at 0 and just left of 1 for sampled r.
inline StageResult verify_root_bracket(const EnvelopeFixture& f) {
  StageResult st{"root_bracket", true, "", std::nullopt};
  auto v = positivity_outside_interval(f.ptilde, f.c1, f.c2);
  if (!v.proven) {
    st.proven = false;
    st.detail = "ptilde not positive outside [c1, c2]; root near [" + decimal_string(v.witness->lo, 6) +
                ", " + decimal_string(v.witness->hi, 6) + "]";
    return st;
  }
  st.detail = "ptilde positive on [0, c1] and [c2, inf) (" + v.method + ")";
  std::vector<int> sample = {f.k + 1, f.k + 2, f.k + 5, f.r0};
  for (int r : sample) {
    if (r < f.k + 1 || r > f.r0) continue;
    auto fac = factor_amplitude(ProblemSpec(r, f.k));
    if (sgn(fac.p1_poly(Rational(0))) >= 0 || sgn(fac.p1_poly(Rational(999, 1000))) >= 0) {
      st.proven = false;
      st.detail += "; P1 sign check failed at r=" + std::to_string(r);
    }
  }
  if (st.proven) st.detail += "; P1 < 0 at t=0 and t=999/1000 for sampled r";
  return st;
}

// --- mesh machinery -----------------------------------------------------

struct MeshStats {
  long cells = 0;
  long refinements = 0;
  int max_depth = 0;
  Rational min_margin = Rational(1);
  Rational worst_lo, worst_hi;
};

struct CellFailure {
  Rational lo, hi;
  Rational bound;
  int depth = 0;
};

namespace detail {

// Smallest of a short doubling ladder of term counts whose improvement has
// dropped below the target slack; capped at 64 terms.
inline Rational exp_upper_adaptive(const Rational& t, const Rational& slack_target) {
  Rational prev = exp_upper_bound(t, 8);
  for (unsigned m : {16u, 32u, 64u}) {
    Rational cur = exp_upper_bound(t, m);
    if (prev - cur < slack_target) return cur;
    prev = cur;
  }
  return prev;
}

template <class BoundFn>
bool certify_cell(const BoundFn& bound, const Rational& lo, const Rational& hi, const Rational& margin,
                  int depth, int depth_cap, MeshStats& stats, std::optional<CellFailure>& failure) {
  ++stats.cells;
  if (depth > stats.max_depth) stats.max_depth = depth;
  Rational b = bound(lo, hi);
  Rational cell_margin = Rational(1) - b;
  if (cell_margin >= margin) {
    if (cell_margin < stats.min_margin) {
      stats.min_margin = cell_margin;
      stats.worst_lo = lo;
      stats.worst_hi = hi;
    }
    return true;
  }
  if (depth >= depth_cap) {
    if (!failure) failure = CellFailure{lo, hi, b, depth};
    return false;
  }
  ++stats.refinements;
  Rational mid = (lo + hi) / 2;
  bool left = certify_cell(bound, lo, mid, margin, depth + 1, depth_cap, stats, failure);
  bool right = left && certify_cell(bound, mid, hi, margin, depth + 1, depth_cap, stats, failure);
  return left && right;
}

// Uniform mesh over [lo, hi] with adaptive bisection of failing cells.
template <class BoundFn>
bool certify_interval(const BoundFn& bound, const Rational& lo, const Rational& hi, long points,
                      const Rational& margin, int depth_cap, MeshStats& stats,
                      std::optional<CellFailure>& failure) {
  Rational h = (hi - lo) / Rational(points);
  for (long i = 0; i < points; ++i) {
    Rational a = lo + Rational(i) * h;
    Rational b = (i + 1 == points) ? hi : lo + Rational(i + 1) * h;
    if (!certify_cell(bound, a, b, margin, 0, depth_cap, stats, failure)) return false;
  }
  return true;
}

}  // namespace detail

// Cell bound for the large-r inequality: envelopes are monotone on y >= 0
// (nonnegative coefficients), so the cell maximum is bounded by evaluating
// the growing part at the right end and everything decaying at the left end.
inline Rational large_r_cell_bound(const EnvelopeFixture& f, const Rational& y0, const Rational& y1) {
  return (f.qtilde_plus(y1) - f.qtilde_minus(y0)) *
         detail::exp_upper_adaptive(f.alpha * y0, f.margin / 10);
}

// R+ - R- split of P/P(0) for one r (nonnegative-coefficient halves).
inline std::pair<Poly, Poly> small_r_split(int k, int r) {
  auto fac = factor_amplitude(ProblemSpec(r, k));
  Poly p = (Rational(1) / fac.p_poly.coeff(0)) * fac.p_poly;
  return p.split_by_sign();
}

inline Rational small_r_cell_bound(int r, int k, const Poly& r_plus, const Poly& r_minus,
                                   const Rational& x0, const Rational& x1) {
  unsigned long m = static_cast<unsigned long>(2 * (r - k) - 1);
  return (r_plus(x1) - r_minus(x0)) * rat_pow(Rational(1) - x0, m);
}

namespace detail {

inline std::string mesh_summary(const MeshStats& stats) {
  std::string s = "cells=" + std::to_string(stats.cells) + " refinements=" + std::to_string(stats.refinements) +
                  " max_depth=" + std::to_string(stats.max_depth);
  if (stats.cells > 0)
    s += " min_margin=" + to_fraction_string(stats.min_margin) + " (" + decimal_string(stats.min_margin, 6) +
         ") at [" + decimal_string(stats.worst_lo, 8) + ", " + decimal_string(stats.worst_hi, 8) + "]";
  return s;
}

}  // namespace detail

// The r > r0 branch: Qtilde envelope dominance for all real r >= r0+1, then
// the piecewise-constant bound of (Qtilde+ - Qtilde-)(y) e^{-alpha y} on
// [c1, c2], adaptively refined. One certificate covers every r > r0 at once
// through (1-x)^{2(r-k)-1} <= exp(-alpha r x), valid since
// alpha <= 2 - (2k+1)/r0.
inline StageResult verify_large_r(const EnvelopeFixture& f, int depth_cap = 20, MeshStats* stats_out = nullptr) {
  StageResult st{"large_r", true, "", std::nullopt};
  // alpha sanity, as an exact inequality
  Rational alpha_cap = Rational(2) - Rational(2 * f.k + 1, f.r0);
  st.detail = "alpha " + to_fraction_string(f.alpha) + " <= " + to_fraction_string(alpha_cap);

  // envelope dominance for r >= r0 + 1
  auto qp = lift_coefficients_in_r(f.k, LiftTarget::QPlus);
  auto qm = lift_coefficients_in_r(f.k, LiftTarget::QMinus);
  Rational threshold(f.r0 + 1);
  for (int i = 0; i <= f.k; ++i) {
    std::string note;
    Poly diff = Poly::monomial(i, f.qtilde_plus.coeff(i)) - qp.coeffs[static_cast<std::size_t>(i)].poly_in_r;
    if (!detail::dominance_on_ray(diff, threshold, note)) {
      st.proven = false;
      st.detail += "; qtilde_plus x^" + std::to_string(i) + " " + note;
    }
    diff = qm.coeffs[static_cast<std::size_t>(i)].poly_in_r - Poly::monomial(i, f.qtilde_minus.coeff(i));
    if (!detail::dominance_on_ray(diff, threshold, note)) {
      st.proven = false;
      st.detail += "; qtilde_minus x^" + std::to_string(i) + " " + note;
    }
  }
  if (!st.proven) return st;
  st.detail += "; envelope dominance proven for r >= " + to_fraction_string(threshold);

  MeshStats stats;
  std::optional<CellFailure> failure;
  auto bound = [&](const Rational& a, const Rational& b) { return large_r_cell_bound(f, a, b); };
  bool ok = detail::certify_interval(bound, f.c1, f.c2, f.large_r_points, f.margin, depth_cap, stats, failure);
  if (stats_out) *stats_out = stats;
  if (ok) {
    st.margin = stats.min_margin;
    st.detail += "; mesh: " + detail::mesh_summary(stats);
  } else {
    st.proven = false;
    st.detail += "; mesh cell [" + decimal_string(failure->lo, 10) + ", " + decimal_string(failure->hi, 10) +
                 "] has bound " + decimal_string(failure->bound, 10) + " >= 1 - margin at depth " +
                 std::to_string(failure->depth) + " (DepthExceeded)";
  }
  return st;
}

// The r <= r0 branch for one fixed r: sign-split P/P(0) = R+ - R- and the
// cellwise bound (R+(x1) - R-(x0)) (1-x0)^{2(r-k)-1} on [c1/r, min(c2/r, 1)].
// The nominal interval [c1/r, c2/r] is clipped at 1 because t = x^2 < 1.
inline StageResult verify_small_r(const EnvelopeFixture& f, int r, int depth_cap = 20,
                                  MeshStats* stats_out = nullptr) {
  if (r < f.k + 1 || r > f.r0) throw std::invalid_argument("verify_small_r: r outside [k+1, r0]");
  StageResult st{"small_r r=" + std::to_string(r), true, "", std::nullopt};
  auto [r_plus, r_minus] = small_r_split(f.k, r);
  Rational lo = f.c1 / Rational(r);
  Rational hi = f.c2 / Rational(r);
  bool clipped = hi > Rational(1);
  if (clipped) hi = Rational(1);
  auto bound = [&](const Rational& a, const Rational& b) {
    return small_r_cell_bound(r, f.k, r_plus, r_minus, a, b);
  };
  MeshStats stats;
  std::optional<CellFailure> failure;
  bool ok = detail::certify_interval(bound, lo, hi, f.points_for_r(r), f.margin, depth_cap, stats, failure);
  if (stats_out) *stats_out = stats;
  if (ok) {
    st.margin = stats.min_margin;
    st.detail = detail::mesh_summary(stats);
    if (clipped) st.detail += "; interval clipped at x=1";
  } else {
    st.proven = false;
    st.detail = "cell [" + decimal_string(failure->lo, 10) + ", " + decimal_string(failure->hi, 10) +
                "] has bound " + decimal_string(failure->bound, 10) + " at depth " +
                std::to_string(failure->depth) + " (DepthExceeded)";
  }
  return st;
}

// Lifted coefficients must reproduce the reference tables exactly (k = 4, 6).
inline StageResult verify_fixture_fidelity(const EnvelopeFixture& f) {
  StageResult st{"fixture_fidelity", true, "", std::nullopt};
  auto tables = builtin_tables(f.k);
  if (!tables) {
    st.detail = "no reference tables for k=" + std::to_string(f.k) + "; skipped";
    return st;
  }
  struct Item {
    LiftTarget target;
    const std::vector<Poly>* ref;
    const char* name;
  };
  const Item items[] = {{LiftTarget::MinusP1, &tables->minus_p1_in_r, "-P1"},
                        {LiftTarget::QPlus, &tables->qplus_in_r, "Q+"},
                        {LiftTarget::QMinus, &tables->qminus_in_r, "Q-"}};
  for (const auto& item : items) {
    LiftResult lift;
    try {
      lift = lift_coefficients_in_r(f.k, item.target, {}, f.ptilde.coeff(0));
    } catch (const LiftMismatch& e) {
      st.proven = false;
      st.detail += std::string(item.name) + ": " + e.what() + "; ";
      continue;
    }
    for (const auto& c : lift.coeffs) {
      Poly ref = static_cast<std::size_t>(c.degree_in_x) < item.ref->size()
                     ? (*item.ref)[static_cast<std::size_t>(c.degree_in_x)]
                     : Poly();
      if (!(c.poly_in_r == ref)) {
        st.proven = false;
        st.detail += std::string(item.name) + " x^" + std::to_string(c.degree_in_x) + " differs; ";
      }
    }
  }
  if (st.proven) st.detail = "lifted -P1, Q+, Q- match the reference tables exactly";
  return st;
}

// --- full pipeline ------------------------------------------------------

struct LambdaRow {
  int r = 0;
  Rational lambda_squared;
  std::string lambda_decimal;
};

struct CertificationReport {
  int k = 0;
  bool proven = false;
  bool quick = false;
  std::vector<StageResult> stages;
  std::string covered_r;
  std::vector<LambdaRow> lambda_table;
  std::map<int, Rational> minus_p1_scale_per_r;
  std::vector<std::string> notes;
  long wall_time_ms = -1;  // -1: not recorded (keeps output deterministic)
};

struct CertifyOptions {
  bool quick = false;
  int depth_cap = 20;
  int lambda_r_max = 20;
  int precision = 30;
  unsigned threads = 0;  // 0: SHARPEMBED_THREADS or hardware default
  bool record_time = false;
};

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SHARPEMBED_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Deterministic parallel map: results are keyed by index, not arrival order.
template <class Fn>
void parallel_indexed(std::size_t count, unsigned threads, const Fn& fn) {
  threads = std::min<std::size_t>(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Runs the whole pipeline for one k and assembles the machine-checkable
// report. On overall success the center is certified as the global maximum
// of the amplitude for every covered r, and lambda = A(0)^{-1}.
inline CertificationReport certify_global_center_max(const EnvelopeFixture& fixture,
                                                     const CertifyOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  CertificationReport rep;
  rep.k = fixture.k;
  rep.quick = opt.quick;

  fixture.validate();
  rep.stages.push_back({"fixture_validate", true,
                        "parity, nonnegative envelope coefficients, alpha <= 2-(2k+1)/r0", std::nullopt});

  rep.stages.push_back(verify_fixture_fidelity(fixture));

  auto dom = verify_ptilde_dominance(fixture);
  rep.stages.push_back(dom);
  {
    auto lift = lift_coefficients_in_r(fixture.k, LiftTarget::MinusP1, {}, fixture.ptilde.coeff(0));
    rep.minus_p1_scale_per_r = lift.scale_per_r;
  }

  if (dom.proven)
    rep.stages.push_back(verify_root_bracket(fixture));
  else
    rep.stages.push_back({"root_bracket", false, "skipped: ptilde dominance failed", std::nullopt});

  rep.stages.push_back(verify_large_r(fixture, opt.depth_cap));

  std::vector<int> small_rs;
  if (opt.quick) {
    for (int r = fixture.k + 1; r <= fixture.r0; r += 10) small_rs.push_back(r);
    if (small_rs.back() != fixture.r0) small_rs.push_back(fixture.r0);
  } else {
    for (int r = fixture.k + 1; r <= fixture.r0; ++r) small_rs.push_back(r);
  }
  std::vector<StageResult> small_results(small_rs.size());
  detail::parallel_indexed(small_rs.size(), detail::resolve_threads(opt.threads), [&](std::size_t i) {
    small_results[i] = verify_small_r(fixture, small_rs[i], opt.depth_cap);
  });
  for (auto& st : small_results) rep.stages.push_back(std::move(st));

  rep.proven = true;
  for (const auto& st : rep.stages)
    if (!st.proven) rep.proven = false;

  if (rep.proven)
    rep.covered_r = opt.quick ? "r > r0 and sampled r <= r0 (partial coverage: --quick)"
                              : "all r >= " + std::to_string(fixture.k + 1);
  else
    rep.covered_r = "not certified";

  for (int r = fixture.k + 1; r <= opt.lambda_r_max; ++r) {
    auto bc = best_constant(ProblemSpec(r, fixture.k), opt.precision);
    rep.lambda_table.push_back({r, bc.lambda_squared, bc.lambda_decimal});
  }

  rep.notes.push_back("exact rational arithmetic throughout; margin checks are exact comparisons");
  rep.notes.push_back("mesh cells are uniform over each bracket; failing cells bisected up to depth " +
                      std::to_string(opt.depth_cap));
  rep.notes.push_back("small-r intervals clipped at x=1 where c2/r > 1 (t = x^2 < 1)");
  rep.notes.push_back("decimal renderings are truncated toward zero");

  if (opt.record_time)
    rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  return rep;
}

inline nlohmann::ordered_json report_to_json(const CertificationReport& rep) {
  nlohmann::ordered_json j;
  j["k"] = rep.k;
  j["verdict"] = rep.proven ? "Proven" : "Failed";
  j["covered_r"] = rep.covered_r;
  j["quick"] = rep.quick;
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const auto& st : rep.stages) {
    nlohmann::ordered_json s;
    s["name"] = st.name;
    s["verdict"] = st.proven ? "Proven" : "Failed";
    if (st.margin) {
      s["margin"] = {{"exact", to_fraction_string(*st.margin)}, {"decimal", decimal_string(*st.margin, 6)}};
    }
    s["detail"] = st.detail;
    stages.push_back(s);
  }
  j["stages"] = stages;
  nlohmann::ordered_json scales = nlohmann::ordered_json::object();
  for (const auto& [r, s] : rep.minus_p1_scale_per_r) scales[std::to_string(r)] = to_fraction_string(s);
  j["minus_p1_scale_per_r"] = scales;
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const auto& row : rep.lambda_table)
    table.push_back({{"r", row.r},
                     {"lambda_squared", to_fraction_string(row.lambda_squared)},
                     {"lambda", row.lambda_decimal}});
  j["lambda_table"] = table;
  j["notes"] = rep.notes;
  if (rep.wall_time_ms >= 0) j["wall_time_ms"] = rep.wall_time_ms;
  return j;
}

}  // namespace sharpembed

#endif
