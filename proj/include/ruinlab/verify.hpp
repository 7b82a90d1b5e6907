#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "ruinlab/bounds.hpp"
#include "ruinlab/montecarlo.hpp"
#include "ruinlab/walk.hpp"

// Grid checks pairing each closed-form bound with the exact (or simulated)
// quantity it is supposed to bound. Deterministic checks report `ok`;
// stochastic ones report a verdict that callers keep out of exit codes.
namespace ruinlab::verify {

inline constexpr double kSandwichTol = 1e-12;
inline constexpr double kResidualTol = 1e-9;

// Fair single-player walk of the n-player local game: up n-1 w.p. 1/n, down 1.
inline WalkSpec fair_player_walk(int n, Position initial, Position target) {
  WalkSpec w;
  w.up_step = n - 1;
  w.up_prob = 1.0 / n;
  w.down_step = 1;
  w.start = initial;
  w.upper = {target, WallKind::absorbing};
  return w;
}

struct FactACell {
  int n = 0;
  Position target = 0;
  Position initial = 0;
  double exact = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool ok = false;
};

inline std::vector<FactACell> fact_a(const std::vector<int>& ns, const std::vector<Position>& targets) {
  std::vector<FactACell> cells;
  for (int n : ns) {
    for (Position w : targets) {
      std::vector<double> h = hit_probability_profile(fair_player_walk(n, 0, w));
      for (Position i = 1; i < w; ++i) {
        Interval b = ruin_prob_bounds(static_cast<double>(i), static_cast<double>(w), n);
        double p = h[static_cast<std::size_t>(i)];
        cells.push_back({n, w, i, p, b.lower, b.upper, b.lower <= p + kSandwichTol && p <= b.upper + kSandwichTol});
      }
    }
  }
  return cells;
}

struct LemmaA1Cell {
  int n = 0;
  std::int64_t k = 0;
  std::int64_t w0 = 0;
  std::int64_t c_inc = 0;
  Position wall = 0;
  double absorption = 0.0;       // exact expected steps from the wall to 0
  double e_sum = 0.0;            // the same via the e recurrence
  double product_bound = 0.0;    // (n-1)(1+1/(n-1))^{w0/k}
  double stated_bound = 0.0;     // n e^{w0/(nk)}
  double residual = 0.0;
  bool residual_ok = false;
  bool routes_agree = false;     // e_sum matches the linear solve
  bool product_ok = false;       // absorption <= product_bound
  bool e_bound_ok = false;       // e_{B-x} <= (1+1/(n-1))^x for every x
  bool e_bound_shifted_ok = false;  // e_{B-x} <= (1+1/(n-1))^{x+1}
  Position first_e_violation = -1;  // smallest x violating the printed e bound

  bool ok() const { return residual_ok && routes_agree && product_ok && e_bound_ok; }
};

// c_inc defaults to 2n per player count when not given.
inline std::vector<LemmaA1Cell> lemma_a1(const std::vector<int>& ns, const std::vector<std::int64_t>& w0s,
                                         std::optional<std::int64_t> c_inc = std::nullopt) {
  std::vector<LemmaA1Cell> cells;
  for (int n : ns) {
    const std::int64_t ci = c_inc.value_or(2 * n);
    for (std::int64_t k = 2; k <= n; ++k) {
      for (std::int64_t w0 : w0s) {
        if (w0 < k) continue;
        WalkSpec walk = poorest_walk(n, w0, k, ci);
        LemmaA1Cell c;
        c.n = n;
        c.k = k;
        c.w0 = w0;
        c.c_inc = ci;
        c.wall = walk.upper.position;
        c.absorption = exact_expected_absorption(walk);
        EVector ev = solve_e_recurrence(walk);
        for (Position x = 1; x <= ev.wall; ++x) c.e_sum += ev.at(x);
        c.residual = e_recurrence_residual(walk, ev);
        c.residual_ok = c.residual < kResidualTol;
        c.routes_agree = std::abs(c.e_sum - c.absorption) <= kResidualTol * std::max(1.0, c.absorption);
        SpUpper sp = sp_upper(static_cast<int>(k), n, static_cast<double>(w0));
        c.product_bound = sp.product.value();
        c.stated_bound = sp.stated.value();
        c.product_ok = c.absorption <= c.product_bound * (1 + kResidualTol);
        const double r = 1.0 + 1.0 / (n - 1);
        c.e_bound_ok = c.e_bound_shifted_ok = true;
        for (Position x = 0; x < ev.wall; ++x) {
          const double e = ev.at(ev.wall - x);
          if (e > std::pow(r, x) * (1 + kResidualTol) && c.e_bound_ok) {
            c.e_bound_ok = false;
            c.first_e_violation = x;
          }
          if (e > std::pow(r, x + 1) * (1 + kResidualTol)) c.e_bound_shifted_ok = false;
        }
        cells.push_back(c);
      }
    }
  }
  return cells;
}

struct LemmaA2Cell {
  int n = 0;
  std::int64_t w0 = 0;
  std::int64_t c_inc = 0;
  Position from = 0;  // raw total units
  Position to = 0;
  double exact = 0.0;
  double bound = 0.0;
  bool conditions_met = false;
  bool ok = false;
};

// Every even raw pair to < from <= w0 on the halved two-survivor total walk.
inline std::vector<LemmaA2Cell> lemma_a2(const std::vector<int>& ns, const std::vector<std::int64_t>& w0s,
                                         std::optional<std::int64_t> c_inc = std::nullopt) {
  std::vector<LemmaA2Cell> cells;
  for (int n : ns) {
    const std::int64_t ci = c_inc.value_or(2 * n);
    for (std::int64_t w0 : w0s) {
      WalkSpec walk = total_walk_halved(n, w0, ci);
      EVector ev = solve_e_recurrence(walk);
      for (Position hi = 1; hi <= walk.upper.position; ++hi) {
        double exact = 0.0;
        for (Position lo = hi - 1; lo >= 0; --lo) {
          exact += ev.at(lo + 1);
          St2Lower b = st2_lower(2.0 * hi, 2.0 * lo, n, static_cast<double>(w0), static_cast<double>(ci));
          const double bound = b.value.value();
          cells.push_back({n, w0, ci, 2 * hi, 2 * lo, exact, bound, b.conditions_met,
                           exact >= bound * (1 - kSandwichTol)});
        }
      }
    }
  }
  return cells;
}

struct SemilocalDeskCheck {
  BoundReport report;
  double s_half_model = 0.0;  // first passage of the halved total walk W0 -> W0/2
  double s_one_model = 0.0;   // sum over k = 2..n of poorest-walk absorption
  bool direction_ok = false;  // s_half_model > s_one_model
};

inline SemilocalDeskCheck semilocal_desk_check(int n, std::int64_t initial, std::int64_t c_inc) {
  SemilocalDeskCheck d;
  d.report = semilocal_report(n, static_cast<double>(initial), static_cast<double>(c_inc));
  const std::int64_t w0 = n * initial;
  WalkSpec total = total_walk_halved(n, w0, c_inc);
  d.s_half_model = exact_first_passage(total, total.upper.position, total.upper.position / 2);
  for (int k = 2; k <= n; ++k) d.s_one_model += exact_expected_absorption(poorest_walk(n, w0, k, c_inc));
  d.direction_ok = d.s_half_model > d.s_one_model;
  return d;
}

struct PstarPoint {
  int n = 0;
  Weight initial = 0;
  Weight target1 = 0;
  Weight target2 = 0;
};

struct PstarCell {
  PstarPoint point;
  Estimate estimate;
  double bound = 0.0;
  bool verdict = false;  // estimate.mean <= bound + 3 stderr
};

// Independent fair players (c_inc = n), one point per cell.
inline std::vector<PstarCell> pstar_grid(const std::vector<PstarPoint>& points, std::int64_t horizon,
                                         const McOptions& opt) {
  std::vector<PstarCell> cells;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PstarPoint& p = points[i];
    GameConfig cfg = GameConfig::uniform(p.n, p.initial, p.n);
    cfg.coupling = Coupling::independent;
    McOptions o = opt;
    o.seed = mix64(opt.seed, i);
    PstarCell c;
    c.point = p;
    c.estimate = estimate_pstar_event(cfg, p.target1, p.target2, horizon, o);
    c.bound = pstar_upper(static_cast<double>(p.initial), static_cast<double>(p.target1),
                          static_cast<double>(p.target2), p.n);
    c.verdict = c.estimate.mean <= c.bound + 3.0 * c.estimate.std_error;
    cells.push_back(c);
  }
  return cells;
}

inline std::vector<PstarPoint> default_pstar_points() {
  return {{2, 2, 4, 8},  {2, 5, 10, 20}, {3, 2, 4, 10}, {3, 5, 8, 20},  {3, 3, 6, 6},
          {4, 2, 5, 10}, {4, 4, 8, 16},  {4, 5, 10, 40}, {5, 3, 6, 12}, {6, 2, 4, 8}};
}

}  // namespace ruinlab::verify
