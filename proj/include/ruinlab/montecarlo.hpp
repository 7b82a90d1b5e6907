#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ruinlab/errors.hpp"
#include "ruinlab/game.hpp"
#include "ruinlab/parallel.hpp"
#include "ruinlab/rng.hpp"
#include "ruinlab/stats.hpp"
#include "ruinlab/walk.hpp"

namespace ruinlab {

struct McOptions {
  std::int64_t replicas = 10'000;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 1'000'000;
  double level = kDefaultConfidence;
  unsigned workers = 0;  // 0: RUIN_LAB_THREADS or hardware concurrency

  unsigned resolved_workers() const { return workers ? workers : worker_count(); }

  void validate() const {
    if (replicas < 1) throw DomainError("replicas must be >= 1");
    if (max_steps < 0) throw DomainError("max_steps must be >= 0");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
  }
};

struct ReplicaRecord {
  std::int64_t replica = 0;
  std::int64_t steps = 0;
  bool stopped = false;
  int final_alive = 0;
  Weight final_total = 0;
};

namespace detail {

inline Estimate reduce(const std::vector<double>& samples, std::int64_t censored, const McOptions& opt) {
  return summarize(samples, censored, opt.seed, opt.level);
}

}  // namespace detail

// Mean stop time over independent replicas. Replicas that reach max_steps
// (or go extinct before the condition can hold) count as max_steps and are
// tallied in `censored`, so the mean is then a lower bound.
inline Estimate estimate_stop_time(const GameConfig& config, const StopCondition& stop, const McOptions& opt,
                                   std::vector<ReplicaRecord>* trace = nullptr) {
  opt.validate();
  const GameState start = init_game(config);
  const auto count = static_cast<std::size_t>(opt.replicas);
  std::vector<ReplicaRecord> records(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        Rng rng = replica_rng(opt.seed, i);
        RunResult r = run(config, start, stop, opt.max_steps, rng);
        records[i] = {static_cast<std::int64_t>(i), r.stopped ? r.steps : opt.max_steps, r.stopped,
                      r.final_state.alive_count, r.final_state.total};
      },
      opt.resolved_workers());
  std::vector<double> samples(count);
  std::int64_t censored = 0;
  for (std::size_t i = 0; i < count; ++i) {
    samples[i] = static_cast<double>(records[i].steps);
    if (!records[i].stopped) ++censored;
  }
  if (trace) *trace = std::move(records);
  return detail::reduce(samples, censored, opt);
}

// Mean change of one player's weight after exactly `steps` steps.
inline Estimate estimate_weight_change(const GameConfig& config, int player, std::int64_t steps,
                                       const McOptions& opt) {
  opt.validate();
  if (player < 0 || player >= config.n) throw DomainError("player slot out of range");
  const GameState start = init_game(config);
  const auto count = static_cast<std::size_t>(opt.replicas);
  std::vector<double> samples(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        Rng rng = replica_rng(opt.seed, i);
        GameState s = start;
        for (std::int64_t k = 0; k < steps && s.alive_count > 0; ++k) play_step(config, s, rng);
        samples[i] = static_cast<double>(s.weights[static_cast<std::size_t>(player)] -
                                         start.weights[static_cast<std::size_t>(player)]);
      },
      opt.resolved_workers());
  return detail::reduce(samples, 0, opt);
}

// Fraction of replicas absorbed at or above the wall. Replicas still moving
// after max_steps count as misses and are reported as censored.
inline Estimate estimate_hit_probability(const WalkSpec& spec, const McOptions& opt) {
  spec.validate();
  opt.validate();
  if (spec.reflecting()) throw DomainError("hit probability needs an absorbing upper wall");
  const auto count = static_cast<std::size_t>(opt.replicas);
  std::vector<double> samples(count);
  std::vector<char> cut(count, 0);
  parallel_for(
      count,
      [&](std::size_t i) {
        Rng rng = replica_rng(opt.seed, i);
        Position x = spec.start;
        std::int64_t k = 0;
        while (!spec.is_absorbed(x) && k < opt.max_steps) {
          x = spec.step(x, rng);
          ++k;
        }
        samples[i] = x >= spec.upper.position ? 1.0 : 0.0;
        cut[i] = !spec.is_absorbed(x);
      },
      opt.resolved_workers());
  return detail::reduce(samples, std::count(cut.begin(), cut.end(), 1), opt);
}

// Mean steps to absorption of a walk; censored replicas count as max_steps.
inline Estimate estimate_absorption_time(const WalkSpec& spec, const McOptions& opt) {
  spec.validate();
  opt.validate();
  const auto count = static_cast<std::size_t>(opt.replicas);
  std::vector<double> samples(count);
  std::vector<char> cut(count, 0);
  parallel_for(
      count,
      [&](std::size_t i) {
        Rng rng = replica_rng(opt.seed, i);
        Position x = spec.start;
        std::int64_t k = 0;
        while (!spec.is_absorbed(x) && k < opt.max_steps) {
          x = spec.step(x, rng);
          ++k;
        }
        samples[i] = static_cast<double>(k);
        cut[i] = !spec.is_absorbed(x);
      },
      opt.resolved_workers());
  return detail::reduce(samples, std::count(cut.begin(), cut.end(), 1), opt);
}

// Pr{(some player ever reaches W1) and (fewer than two players ever reach
// W2)}. "Ever" is truncated at the horizon; a replica is censored when the
// horizon arrives while some alive player has not yet reached W2 and the
// event is not already decided.
inline Estimate estimate_pstar_event(const GameConfig& config, Weight target1, Weight target2,
                                     std::int64_t horizon, const McOptions& opt) {
  opt.validate();
  if (target1 > target2) throw DomainError("W1 must not exceed W2");
  if (horizon < 0) throw DomainError("horizon must be >= 0");
  const GameState start = init_game(config);
  const auto count = static_cast<std::size_t>(opt.replicas);
  std::vector<double> samples(count);
  std::vector<char> cut(count, 0);
  parallel_for(
      count,
      [&](std::size_t i) {
        Rng rng = replica_rng(opt.seed, i);
        GameState s = start;
        const std::size_t n = s.weights.size();
        std::vector<char> hit1(n, 0), hit2(n, 0);
        int any1 = 0, count2 = 0;
        auto mark = [&] {
          for (std::size_t p = 0; p < n; ++p) {
            if (!hit1[p] && s.weights[p] >= target1) hit1[p] = 1, any1 = 1;
            if (!hit2[p] && s.weights[p] >= target2) hit2[p] = 1, ++count2;
          }
        };
        // every alive player has already reached W2, so nothing can change
        auto settled = [&] {
          for (std::size_t p = 0; p < n; ++p)
            if (s.alive[p] && !hit2[p]) return false;
          return true;
        };
        mark();
        std::int64_t k = 0;
        while (count2 < 2 && !settled() && k < horizon) {
          play_step(config, s, rng);
          ++k;
          mark();
        }
        samples[i] = (any1 && count2 < 2) ? 1.0 : 0.0;
        cut[i] = count2 < 2 && !settled();
      },
      opt.resolved_workers());
  return detail::reduce(samples, std::count(cut.begin(), cut.end(), 1), opt);
}

// Alive count and sorted alive weights right after the first bankruptcy.
struct Configuration {
  int survivors = 0;
  std::vector<Weight> weights;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct ConfigurationGroup {
  Configuration config;
  std::int64_t frequency = 0;
  bool merged = false;  // pooled by survivor count because the group was small
};

struct EffRecReport {
  Estimate lhs;                 // T_one from the initial configuration
  Estimate t_one;               // steps to the first bankruptcy
  Estimate continuation_max;    // largest group mean of the remaining steps
  Configuration argmax;
  bool argmax_merged = false;
  std::vector<ConfigurationGroup> configs_observed;
  bool verdict = false;
  bool inconclusive = false;    // some replica was censored
  bool equality = false;        // lhs and t_one agree sample-for-sample
  bool audit_ok = true;         // cached totals matched recomputation every step
  double slack = 0.0;           // 3 * combined standard error
  std::vector<std::string> notes;
};

inline constexpr std::int64_t kMinGroupSize = 30;

// Splits each replica of the game at its first bankruptcy: t_one is the time
// to that point, and the rest of the run is a sample of T_one from the
// configuration it left behind. Continuations are grouped by that
// configuration and the largest group mean stands in for the maximizing
// configuration.
inline EffRecReport verify_eff_rec(const GameConfig& config, const McOptions& opt) {
  opt.validate();
  const GameState start = init_game(config);
  const auto count = static_cast<std::size_t>(opt.replicas);

  struct Sample {
    std::int64_t first = 0;
    std::int64_t rest = 0;
    bool censored = false;
    bool audit_ok = true;
    Configuration at_split;
  };
  std::vector<Sample> samples(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        Rng rng = replica_rng(opt.seed, i);
        Sample& out = samples[i];
        auto audit = [&](const GameState& s) {
          if (!s.consistent()) out.audit_ok = false;
        };
        RunResult a = run(config, start, StopCondition::first_bankruptcy(), opt.max_steps, rng, audit);
        out.first = a.steps;
        if (!a.stopped) {
          out.censored = true;
          return;
        }
        const GameState& mid = a.final_state;
        out.at_split.survivors = mid.alive_count;
        for (std::size_t p = 0; p < mid.weights.size(); ++p)
          if (mid.alive[p]) out.at_split.weights.push_back(mid.weights[p]);
        std::sort(out.at_split.weights.begin(), out.at_split.weights.end());
        RunResult b = run(config, mid, StopCondition::one_survivor(), opt.max_steps - a.steps, rng, audit);
        out.rest = b.steps;
        out.censored = !b.stopped;
      },
      opt.resolved_workers());

  EffRecReport rep;
  std::vector<double> lhs(count), first(count);
  std::int64_t censored = 0;
  std::map<Configuration, std::vector<double>> groups;
  for (std::size_t i = 0; i < count; ++i) {
    const Sample& s = samples[i];
    first[i] = static_cast<double>(s.first);
    lhs[i] = static_cast<double>(s.first + s.rest);
    if (s.censored) {
      ++censored;
      lhs[i] = static_cast<double>(opt.max_steps);
      continue;
    }
    if (!s.audit_ok) rep.audit_ok = false;
    groups[s.at_split].push_back(static_cast<double>(s.rest));
  }
  rep.lhs = detail::reduce(lhs, censored, opt);
  rep.t_one = detail::reduce(first, censored, opt);
  rep.inconclusive = censored > 0;
  rep.equality = censored == 0 && std::equal(lhs.begin(), lhs.end(), first.begin());

  // Small groups are pooled by survivor count; the pooled group keeps only
  // the survivor count in its configuration.
  std::map<Configuration, std::pair<std::vector<double>, bool>> final_groups;
  bool any_merged = false;
  for (auto& [cfg, xs] : groups) {
    rep.configs_observed.push_back({cfg, static_cast<std::int64_t>(xs.size()), false});
    if (static_cast<std::int64_t>(xs.size()) >= kMinGroupSize) {
      final_groups[cfg] = {xs, false};
    } else {
      any_merged = true;
      auto& pooled = final_groups[Configuration{cfg.survivors, {}}];
      pooled.first.insert(pooled.first.end(), xs.begin(), xs.end());
      pooled.second = true;
    }
  }
  if (any_merged)
    rep.notes.push_back("configuration groups with fewer than " + std::to_string(kMinGroupSize) +
                        " replicas merged by survivor count");
  std::sort(rep.configs_observed.begin(), rep.configs_observed.end(),
            [](const ConfigurationGroup& a, const ConfigurationGroup& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              return a.config < b.config;
            });
  for (auto& g : rep.configs_observed)
    if (g.frequency < kMinGroupSize) g.merged = true;

  bool have = false;
  for (const auto& [cfg, entry] : final_groups) {
    Estimate e = detail::reduce(entry.first, 0, opt);
    if (!have || e.mean > rep.continuation_max.mean) {
      rep.continuation_max = e;
      rep.argmax = cfg;
      rep.argmax_merged = entry.second;
      have = true;
    }
  }
  if (!have) rep.continuation_max = detail::reduce({}, 0, opt);

  rep.slack = 3.0 * std::sqrt(rep.lhs.std_error * rep.lhs.std_error + rep.t_one.std_error * rep.t_one.std_error +
                              rep.continuation_max.std_error * rep.continuation_max.std_error);
  rep.verdict = rep.lhs.mean <= rep.t_one.mean + rep.continuation_max.mean + rep.slack;
  rep.notes.push_back("maximum taken over observed configurations only; it under-estimates the maximum over "
                      "all reachable configurations");
  if (rep.inconclusive) rep.notes.push_back("censored replicas present: verdict inconclusive");
  return rep;
}

}  // namespace ruinlab
