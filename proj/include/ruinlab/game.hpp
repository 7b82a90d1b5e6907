#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ruinlab/errors.hpp"

namespace ruinlab {

using Weight = std::int64_t;

enum class Rule { local, semilocal };
enum class Coupling { coupled, independent };

// Who can be drawn as the winner of a coupled step. Slot-uniform keeps
// bankrupt slots in the draw, so an alive player's up-move probability stays
// exactly 1/n as players drop out.
enum class WinnerSelection { slot_uniform, alive_uniform };

struct GameConfig {
  int n = 2;
  std::vector<Weight> initial_weights;
  Weight c_inc = 1;
  Weight c_dec = 1;
  Rule rule = Rule::local;
  Coupling coupling = Coupling::coupled;
  std::optional<Weight> w0;  // semilocal cap; defaults to the initial total
  WinnerSelection selection = WinnerSelection::slot_uniform;

  static GameConfig uniform(int n, Weight initial, Weight c_inc, Weight c_dec = 1,
                            Rule rule = Rule::local) {
    GameConfig c;
    c.n = n;
    c.initial_weights.assign(static_cast<std::size_t>(std::max(n, 0)), initial);
    c.c_inc = c_inc;
    c.c_dec = c_dec;
    c.rule = rule;
    return c;
  }

  Weight initial_total() const {
    return std::accumulate(initial_weights.begin(), initial_weights.end(), Weight{0});
  }

  Weight cap() const { return w0.value_or(initial_total()); }

  void validate() const {
    if (n < 2) throw ConfigError("n", "player count must be >= 2");
    if (initial_weights.size() != static_cast<std::size_t>(n))
      throw ConfigError("initial_weights", "expected " + std::to_string(n) + " weights, got " +
                                               std::to_string(initial_weights.size()));
    for (Weight w : initial_weights)
      if (w < 1) throw ConfigError("initial_weights", "initial weight must be >= 1");
    if (c_inc < 1) throw ConfigError("c_inc", "must be >= 1");
    if (c_dec < 1) throw ConfigError("c_dec", "must be >= 1");
    if (rule == Rule::semilocal) {
      if (coupling == Coupling::independent)
        throw ConfigError("coupling", "semilocal cap is undefined for independent players");
      if (cap() != initial_total())
        throw ConfigError("w0", "semilocal cap must equal the initial total " +
                                    std::to_string(initial_total()));
    }
  }
};

struct GameState {
  std::vector<Weight> weights;
  std::vector<bool> alive;
  std::int64_t step = 0;
  Weight total = 0;
  int alive_count = 0;

  // Recomputes every cached quantity and compares; used by tests and audits.
  bool consistent() const {
    if (weights.size() != alive.size()) return false;
    Weight sum = 0;
    int count = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < 0) return false;
      if (alive[i] != (weights[i] > 0)) return false;
      if (alive[i]) {
        sum += weights[i];
        ++count;
      }
    }
    return sum == total && count == alive_count && step >= 0;
  }

  friend bool operator==(const GameState&, const GameState&) = default;
};

inline GameState init_game(const GameConfig& config) {
  config.validate();
  GameState s;
  s.weights = config.initial_weights;
  s.alive.resize(s.weights.size());
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    s.alive[i] = s.weights[i] > 0;
    if (s.alive[i]) {
      s.total += s.weights[i];
      ++s.alive_count;
    }
  }
  return s;
}

namespace detail {

inline void require_alive(const GameState& s) {
  if (s.alive_count == 0) throw InvalidStateError("no players alive");
}

inline void settle_bankruptcies(GameState& s) {
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    if (s.alive[i] && s.weights[i] == 0) {
      s.alive[i] = false;
      --s.alive_count;
    }
  }
}

}  // namespace detail

// In-place form of apply_step. Every player alive at step start pays
// min(weight, c_dec); the winner, if alive at step start, receives c_inc in
// the same update. Under the semilocal rule the award is cut so the total
// never exceeds the cap. Bankruptcy is judged on the net result.
inline void advance(const GameConfig& config, GameState& s, int winner) {
  detail::require_alive(s);
  if (winner < 0 || static_cast<std::size_t>(winner) >= s.weights.size())
    throw DomainError("winner slot " + std::to_string(winner) + " out of range");
  const bool winner_alive = s.alive[static_cast<std::size_t>(winner)];
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    if (!s.alive[i]) continue;
    Weight pay = std::min(s.weights[i], config.c_dec);
    s.weights[i] -= pay;
    s.total -= pay;
  }
  if (winner_alive) {
    Weight award = config.c_inc;
    if (config.rule == Rule::semilocal) award = std::clamp(config.cap() - s.total, Weight{0}, award);
    s.weights[static_cast<std::size_t>(winner)] += award;
    s.total += award;
  }
  detail::settle_bankruptcies(s);
  ++s.step;
}

inline GameState apply_step(const GameConfig& config, const GameState& state, int winner) {
  GameState next = state;
  advance(config, next, winner);
  return next;
}

template <typename URBG>
int draw_winner(const GameConfig& config, const GameState& s, URBG& rng) {
  if (config.selection == WinnerSelection::slot_uniform) {
    std::uniform_int_distribution<int> pick(0, config.n - 1);
    return pick(rng);
  }
  detail::require_alive(s);
  std::uniform_int_distribution<int> pick(0, s.alive_count - 1);
  int k = pick(rng);
  for (std::size_t i = 0; i < s.alive.size(); ++i)
    if (s.alive[i] && k-- == 0) return static_cast<int>(i);
  throw InvalidStateError("alive count out of sync with alive flags");
}

template <typename URBG>
std::pair<GameState, int> step_random(const GameConfig& config, const GameState& state, URBG& rng) {
  detail::require_alive(state);
  int winner = draw_winner(config, state, rng);
  return {apply_step(config, state, winner), winner};
}

// Each alive player flips its own 1/n coin; any number of players may win in
// one step. Payment and award are settled exactly as in advance().
template <typename URBG>
void advance_independent(const GameConfig& config, GameState& s, URBG& rng) {
  detail::require_alive(s);
  if (config.rule == Rule::semilocal)
    throw ConfigError("coupling", "semilocal cap is undefined for independent players");
  std::bernoulli_distribution wins(1.0 / config.n);
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    if (!s.alive[i]) continue;
    Weight delta = -std::min(s.weights[i], config.c_dec);
    if (wins(rng)) delta += config.c_inc;
    s.weights[i] += delta;
    s.total += delta;
  }
  detail::settle_bankruptcies(s);
  ++s.step;
}

template <typename URBG>
GameState independent_step(const GameConfig& config, const GameState& state, URBG& rng) {
  GameState next = state;
  advance_independent(config, next, rng);
  return next;
}

// One random step under the configured coupling.
template <typename URBG>
void play_step(const GameConfig& config, GameState& s, URBG& rng) {
  if (config.coupling == Coupling::independent) {
    advance_independent(config, s, rng);
  } else {
    advance(config, s, draw_winner(config, s, rng));
  }
}

struct StopCondition {
  enum class Kind { first_bankruptcy, one_survivor, total_at_most, some_weight_reaches, max_steps_only };

  Kind kind = Kind::max_steps_only;
  Weight parameter = 0;

  static StopCondition first_bankruptcy() { return {Kind::first_bankruptcy, 0}; }
  static StopCondition one_survivor() { return {Kind::one_survivor, 0}; }
  static StopCondition total_at_most(Weight x) { return checked({Kind::total_at_most, x}); }
  static StopCondition some_weight_reaches(Weight w) { return checked({Kind::some_weight_reaches, w}); }
  static StopCondition max_steps_only() { return {Kind::max_steps_only, 0}; }

  // baseline_alive is the alive count when the run started; a first
  // bankruptcy is any drop below it.
  bool satisfied(const GameState& s, int baseline_alive) const {
    switch (kind) {
      case Kind::first_bankruptcy:
        return s.alive_count < baseline_alive;
      case Kind::one_survivor:
        return s.alive_count <= 1;
      case Kind::total_at_most:
        return s.total <= parameter;
      case Kind::some_weight_reaches:
        return std::any_of(s.weights.begin(), s.weights.end(), [&](Weight w) { return w >= parameter; });
      case Kind::max_steps_only:
        return false;
    }
    return false;
  }

 private:
  static StopCondition checked(StopCondition c) {
    if (c.parameter < 0) throw DomainError("stop condition parameter must be >= 0");
    return c;
  }
};

struct RunResult {
  std::int64_t steps = 0;
  bool stopped = false;
  // Everyone went bankrupt before the stop condition held; the run cannot
  // continue. Never set together with stopped.
  bool extinct = false;
  GameState final_state;
};

struct NoObserver {
  void operator()(const GameState&) const noexcept {}
};

// Plays from `state` until `stop` holds (checked before every step, so a
// satisfied condition gives steps = 0) or max_steps steps were played.
// on_step sees the state after every step.
template <typename URBG, typename Observer = NoObserver>
RunResult run(const GameConfig& config, GameState state, const StopCondition& stop,
              std::int64_t max_steps, URBG& rng, Observer&& on_step = {}) {
  if (max_steps < 0) throw DomainError("max_steps must be >= 0");
  const int baseline = state.alive_count;
  RunResult r;
  for (;;) {
    if (stop.satisfied(state, baseline)) {
      r.stopped = true;
      break;
    }
    if (r.steps >= max_steps) break;
    if (state.alive_count == 0) {
      r.extinct = true;
      break;
    }
    play_step(config, state, rng);
    ++r.steps;
    on_step(state);
  }
  r.final_state = std::move(state);
  return r;
}

inline std::string to_string(StopCondition::Kind kind) {
  switch (kind) {
    case StopCondition::Kind::first_bankruptcy: return "first-bankruptcy";
    case StopCondition::Kind::one_survivor: return "one-survivor";
    case StopCondition::Kind::total_at_most: return "total-at-most";
    case StopCondition::Kind::some_weight_reaches: return "reach";
    case StopCondition::Kind::max_steps_only: return "max-steps";
  }
  return "unknown";
}

}  // namespace ruinlab
