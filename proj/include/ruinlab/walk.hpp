#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ruinlab/errors.hpp"

namespace ruinlab {

using Position = std::int64_t;

enum class WallKind { absorbing, reflecting };

struct Wall {
  Position position = 1;
  WallKind kind = WallKind::absorbing;
};

// A skip-limited integer walk on [0, wall]: +up_step with probability
// up_prob, otherwise -down_step. Position 0 (or below) absorbs. An absorbing
// upper wall absorbs every position >= wall; a reflecting one clamps to the
// wall.
struct WalkSpec {
  Position up_step = 1;
  double up_prob = 0.5;
  Position down_step = 1;
  Position start = 0;
  Wall upper;
  std::string note;  // e.g. boundary truncation when the wall was floored

  void validate() const {
    if (up_step < 1) throw ConfigError("up_step", "must be >= 1");
    if (down_step < 1) throw ConfigError("down_step", "must be >= 1");
    if (!(up_prob > 0.0 && up_prob < 1.0)) throw ConfigError("up_prob", "must lie in (0, 1)");
    if (upper.position < 1) throw ConfigError("wall", "must be >= 1");
    if (start < 0 || start > upper.position) throw ConfigError("start", "must lie in [0, wall]");
  }

  bool reflecting() const { return upper.kind == WallKind::reflecting; }

  // Position after one move from x, walls applied. Absorbing states are
  // fixed points.
  Position move(Position x, bool up) const {
    if (is_absorbed(x)) return x;
    Position y = up ? x + up_step : x - down_step;
    if (y <= 0) return 0;
    if (reflecting()) return std::min(y, upper.position);
    return y;
  }

  bool is_absorbed(Position x) const {
    return x <= 0 || (!reflecting() && x >= upper.position);
  }

  template <typename URBG>
  Position step(Position x, URBG& rng) const {
    std::bernoulli_distribution up(up_prob);
    return move(x, up(rng));
  }
};

// Walk followed by the currently poorest of k players under the semilocal
// rule: up c_inc-1 with prob 1/n, down 1, reflecting at floor(w0/k), started
// at the wall (the worst case for reaching 0 quickly).
inline WalkSpec poorest_walk(int n, std::int64_t w0, std::int64_t k, std::int64_t c_inc) {
  if (k <= 0) throw DomainError("k must be >= 1");
  if (n < 2) throw DomainError("n must be >= 2");
  if (c_inc < 2) throw DomainError("c_inc must be >= 2 for the poorest walk to move up");
  if (w0 < k) throw DomainError("w0 must be >= k");
  WalkSpec s;
  s.up_step = c_inc - 1;
  s.up_prob = 1.0 / n;
  s.down_step = 1;
  s.upper = {w0 / k, WallKind::reflecting};
  s.start = s.upper.position;
  if (w0 % k != 0)
    s.note = "boundary w0/k = " + std::to_string(w0) + "/" + std::to_string(k) + " floored to " +
             std::to_string(s.upper.position);
  return s;
}

// Walk for the total weight of k surviving players: each step the total pays
// k and gains c_inc with probability k/n. Reflecting at w0, started there.
inline WalkSpec total_walk(int n, std::int64_t w0, std::int64_t k, std::int64_t c_inc) {
  if (k <= 0) throw DomainError("k must be >= 1");
  if (c_inc <= k) throw DomainError("degenerate walk: c_inc <= k gives no upward motion");
  if (k >= n) throw DomainError("degenerate walk: k >= n makes every step an up-step");
  if (w0 < 1) throw DomainError("w0 must be >= 1");
  WalkSpec s;
  s.up_step = c_inc - k;
  s.up_prob = static_cast<double>(k) / n;
  s.down_step = k;
  s.upper = {w0, WallKind::reflecting};
  s.start = w0;
  return s;
}

// Two-survivor total walk with every length divided by 2: up c_inc/2 - 1
// with prob 2/n, down 1, reflecting at floor(w0/2).
inline WalkSpec total_walk_halved(int n, std::int64_t w0, std::int64_t c_inc) {
  if (c_inc <= 2) throw DomainError("degenerate walk: c_inc <= k gives no upward motion");
  if (c_inc % 2 != 0) throw DomainError("halved total walk needs an even c_inc");
  if (n <= 2) throw DomainError("degenerate walk: k >= n makes every step an up-step");
  if (w0 < 2) throw DomainError("w0 must be >= 2");
  WalkSpec s;
  s.up_step = c_inc / 2 - 1;
  s.up_prob = 2.0 / n;
  s.down_step = 1;
  s.upper = {w0 / 2, WallKind::reflecting};
  s.start = s.upper.position;
  if (w0 % 2 != 0)
    s.note = "boundary w0/2 = " + std::to_string(w0) + "/2 floored to " + std::to_string(s.upper.position);
  return s;
}

namespace detail {

// Transient states are 1..top; index i holds position i+1.
inline Position top_transient(const WalkSpec& spec) {
  return spec.reflecting() ? spec.upper.position : spec.upper.position - 1;
}

inline constexpr Position kMaxDenseStates = 5000;

// Solves (I - Q) X = B for the transient block, where Q moves within
// positions (floor, top]. Positions <= floor are absorbing targets.
inline Eigen::MatrixXd solve_transient(const WalkSpec& spec, Position floor, const Eigen::MatrixXd& rhs) {
  const Position top = top_transient(spec);
  const Eigen::Index m = static_cast<Eigen::Index>(top - floor);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
  for (Position x = floor + 1; x <= top; ++x) {
    const Eigen::Index i = x - floor - 1;
    for (bool up : {true, false}) {
      Position y = spec.move(x, up);
      if (y <= floor || spec.is_absorbed(y)) continue;
      a(i, y - floor - 1) -= up ? spec.up_prob : 1.0 - spec.up_prob;
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
    throw NumericError("singular first-step system (rcond " + std::to_string(rcond) + ", " +
                       std::to_string(m) + " states): absorption unreachable from some state");
  Eigen::MatrixXd x = lu.solve(rhs);
  const double residual = (a * x - rhs).cwiseAbs().maxCoeff();
  if (!(residual < 1e-8 * std::max(1.0, x.cwiseAbs().maxCoeff())))
    throw NumericError("first-step system residual " + std::to_string(residual) + " too large");
  return x;
}

inline void require_size(const WalkSpec& spec) {
  if (top_transient(spec) > kMaxDenseStates)
    throw DomainError("walk has more than " + std::to_string(kMaxDenseStates) + " transient states");
}

}  // namespace detail

// Probability of absorption at or above the wall from every position
// 0..wall. Requires an absorbing upper wall.
inline std::vector<double> hit_probability_profile(const WalkSpec& spec) {
  spec.validate();
  if (spec.reflecting()) throw DomainError("hit probability needs an absorbing upper wall");
  detail::require_size(spec);
  const Position top = detail::top_transient(spec);
  std::vector<double> h(static_cast<std::size_t>(spec.upper.position) + 1, 0.0);
  h.back() = 1.0;
  if (top < 1) return h;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(top, 1);
  for (Position x = 1; x <= top; ++x)
    if (spec.move(x, true) >= spec.upper.position) rhs(x - 1, 0) = spec.up_prob;
  Eigen::MatrixXd sol = detail::solve_transient(spec, 0, rhs);
  for (Position x = 1; x <= top; ++x) h[static_cast<std::size_t>(x)] = sol(x - 1, 0);
  return h;
}

inline double exact_hit_probability(const WalkSpec& spec) {
  return hit_probability_profile(spec)[static_cast<std::size_t>(spec.start)];
}

// Expected steps until absorption (at 0, or at the upper wall if it absorbs)
// from every position 0..wall.
inline std::vector<double> absorption_time_profile(const WalkSpec& spec) {
  spec.validate();
  detail::require_size(spec);
  const Position top = detail::top_transient(spec);
  std::vector<double> t(static_cast<std::size_t>(spec.upper.position) + 1, 0.0);
  if (top < 1) return t;
  Eigen::MatrixXd sol = detail::solve_transient(spec, 0, Eigen::MatrixXd::Ones(top, 1));
  for (Position x = 1; x <= top; ++x) t[static_cast<std::size_t>(x)] = sol(x - 1, 0);
  return t;
}

inline double exact_expected_absorption(const WalkSpec& spec) {
  return absorption_time_profile(spec)[static_cast<std::size_t>(spec.start)];
}

// e[x] = expected steps to first reach x-1 from x, for x in 1..wall.
struct EVector {
  Position wall = 0;
  std::vector<double> e;  // e[0] unused

  double at(Position x) const { return e.at(static_cast<std::size_t>(x)); }
};

// Backward iteration from the wall of
//   e_x = 1/(1-p) + p/(1-p) * (e_{x+1} + ... + e_{min(x+u, B)}).
// An up-move from x lands on min(x+u, B); returning to x-1 then costs
// e_{landing} + ... + e_{x}, hence the truncated sum.
inline EVector solve_e_recurrence(const WalkSpec& spec) {
  spec.validate();
  if (!spec.reflecting()) throw DomainError("e recurrence needs a reflecting upper wall");
  if (spec.down_step != 1) throw DomainError("e recurrence needs down_step = 1");
  const Position b = spec.upper.position;
  const double p = spec.up_prob;
  EVector ev;
  ev.wall = b;
  ev.e.assign(static_cast<std::size_t>(b) + 1, 0.0);
  // window = e_{x+1} + ... + e_{min(x+u, B)}
  double window = 0.0;
  for (Position x = b; x >= 1; --x) {
    const auto i = static_cast<std::size_t>(x);
    ev.e[i] = (1.0 + p * window) / (1.0 - p);
    window += ev.e[i];
    if (x + spec.up_step <= b) window -= ev.e[static_cast<std::size_t>(x + spec.up_step)];
  }
  return ev;
}

// Largest |lhs - rhs| of the defining recurrence over x in 1..B.
inline double e_recurrence_residual(const WalkSpec& spec, const EVector& ev) {
  const double p = spec.up_prob;
  double worst = 0.0;
  for (Position x = 1; x <= ev.wall; ++x) {
    double sum = 0.0;
    for (Position j = 1; j <= spec.up_step && x + j <= ev.wall; ++j) sum += ev.at(x + j);
    double rhs = 1.0 / (1.0 - p) + p / (1.0 - p) * sum;
    worst = std::max(worst, std::abs(ev.at(x) - rhs));
  }
  return worst;
}

// Expected steps to first reach `to` from `from` on a reflecting walk.
// Unit down-steps telescope into a sum of e-values; other walks fall back to
// a linear solve with every position <= to absorbing.
inline double exact_first_passage(const WalkSpec& spec, Position from, Position to) {
  spec.validate();
  if (!spec.reflecting()) throw DomainError("first passage needs a reflecting upper wall");
  if (to >= from) throw DomainError("first passage needs to < from");
  if (to < 0 || from > spec.upper.position) throw DomainError("from/to must lie in [0, wall]");
  if (spec.down_step == 1) {
    EVector ev = solve_e_recurrence(spec);
    double sum = 0.0;
    for (Position x = to + 1; x <= from; ++x) sum += ev.at(x);
    return sum;
  }
  detail::require_size(spec);
  const Position top = spec.upper.position;
  Eigen::MatrixXd sol = detail::solve_transient(spec, to, Eigen::MatrixXd::Ones(top - to, 1));
  return sol(from - to - 1, 0);
}

}  // namespace ruinlab
