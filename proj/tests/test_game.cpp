#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "ruinlab/ruinlab.hpp"

using namespace ruinlab;

namespace {

GameConfig three(Rule rule = Rule::local) {
  GameConfig c;
  c.n = 3;
  c.initial_weights = {1, 2, 5};
  c.c_inc = 3;
  c.rule = rule;
  return c;
}

}  // namespace

TEST(Game, SingleStepByHand) {
  GameConfig c = three();
  GameState s = init_game(c);
  GameState a = apply_step(c, s, 0);
  EXPECT_EQ(a.weights, (std::vector<Weight>{3, 1, 4}));
  EXPECT_EQ(a.alive_count, 3);
  GameState b = apply_step(c, s, 2);
  EXPECT_EQ(b.weights, (std::vector<Weight>{0, 1, 7}));
  EXPECT_FALSE(b.alive[0]);
  EXPECT_EQ(b.total, 8);
  EXPECT_TRUE(b.consistent());
  EXPECT_EQ(b.step, 1);
  // input untouched
  EXPECT_EQ(s.weights, (std::vector<Weight>{1, 2, 5}));
}

TEST(Game, DeadWinnerGetsNothing) {
  GameConfig c = three();
  GameState s = apply_step(c, init_game(c), 2);  // player 0 bankrupt
  GameState t = apply_step(c, s, 0);
  EXPECT_EQ(t.weights, (std::vector<Weight>{0, 0, 6}));
  EXPECT_EQ(t.alive_count, 1);
}

TEST(Game, SemilocalClipsAward) {
  GameConfig c = three(Rule::semilocal);
  GameState s = init_game(c);
  GameState a = apply_step(c, s, 1);
  EXPECT_EQ(a.total, 8);
  EXPECT_EQ(a.weights, (std::vector<Weight>{0, 4, 4}));
  // after a bankruptcy the total drops by one payer less, award still capped
  GameState b = apply_step(c, a, 2);
  EXPECT_EQ(b.weights, (std::vector<Weight>{0, 3, 5}));
  EXPECT_EQ(b.total, 8);
}

TEST(Game, ConfigErrors) {
  GameConfig c = three();
  c.n = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = three();
  c.initial_weights = {1, 2};
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "initial_weights");
  }
  c = three();
  c.initial_weights[1] = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = three(Rule::semilocal);
  c.coupling = Coupling::independent;
  EXPECT_THROW(c.validate(), ConfigError);
  c = three(Rule::semilocal);
  c.w0 = 100;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Game, StepErrors) {
  GameConfig c = three();
  GameState s = init_game(c);
  EXPECT_THROW(apply_step(c, s, 3), DomainError);
  EXPECT_THROW(apply_step(c, s, -1), DomainError);
  GameState dead = s;
  dead.weights.assign(3, 0);
  dead.alive.assign(3, false);
  dead.total = 0;
  dead.alive_count = 0;
  EXPECT_THROW(apply_step(c, dead, 0), InvalidStateError);
  Rng rng(1);
  EXPECT_THROW(run(c, s, StopCondition::one_survivor(), -1, rng), DomainError);
}

// Expected one-step change of every player, enumerated over the n equally
// likely winners, against c_inc/n - min(w, c_dec).
TEST(Game, OneStepExpectationByEnumeration) {
  for (Weight c_dec : {1, 2}) {
    GameConfig c;
    c.n = 4;
    c.initial_weights = {1, 3, 2, 7};
    c.c_inc = 5;
    c.c_dec = c_dec;
    GameState s = init_game(c);
    for (int p = 0; p < c.n; ++p) {
      double mean = 0.0;
      for (int w = 0; w < c.n; ++w) mean += static_cast<double>(apply_step(c, s, w).weights[p] - s.weights[p]) / c.n;
      EXPECT_NEAR(mean, 5.0 / 4 - static_cast<double>(std::min(s.weights[p], c_dec)), 1e-12);
    }
  }
}

TEST(Game, SlotUniformChiSquare) {
  GameConfig c = GameConfig::uniform(5, 10, 5);
  GameState s = init_game(c);
  Rng rng(2024);
  std::vector<long> counts(5, 0);
  const long draws = 1'000'000;
  for (long i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(draw_winner(c, s, rng))];
  double chi2 = 0.0;
  for (long k : counts) chi2 += std::pow(k - draws / 5.0, 2) / (draws / 5.0);
  EXPECT_LT(chi2, 18.47);  // 4 df, p = 0.001
}

TEST(Game, AliveUniformSkipsBankrupt) {
  GameConfig c = three();
  c.selection = WinnerSelection::alive_uniform;
  GameState s = apply_step(c, init_game(c), 2);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_NE(draw_winner(c, s, rng), 0);
}

TEST(Game, RandomTrajectoryInvariants) {
  for (Rule rule : {Rule::local, Rule::semilocal}) {
    GameConfig c = GameConfig::uniform(4, 6, 8, 1, rule);
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
      GameState s = init_game(c);
      int alive = s.alive_count;
      while (s.alive_count > 1 && s.step < 5000) {
        auto [next, w] = step_random(c, s, rng);
        ASSERT_GE(w, 0);
        ASSERT_LT(w, c.n);
        ASSERT_TRUE(next.consistent());
        ASSERT_LE(next.alive_count, alive);  // nobody comes back
        for (std::size_t i = 0; i < s.alive.size(); ++i)
          if (!s.alive[i]) {
            ASSERT_EQ(next.weights[i], 0);
          }
        if (rule == Rule::semilocal) {
          ASSERT_LE(next.total, c.cap());
        }
        alive = next.alive_count;
        s = std::move(next);
      }
    }
  }
}

TEST(Game, IndependentCoupling) {
  GameConfig c = GameConfig::uniform(3, 5, 3);
  c.coupling = Coupling::independent;
  Rng rng(5);
  GameState s = init_game(c);
  for (int i = 0; i < 2000 && s.alive_count > 0; ++i) {
    GameState t = independent_step(c, s, rng);
    ASSERT_TRUE(t.consistent());
    for (std::size_t k = 0; k < 3; ++k)
      if (s.alive[k]) {
        ASSERT_TRUE(t.weights[k] == s.weights[k] - 1 || t.weights[k] == s.weights[k] + 2);
      }
    s = t;
  }
  GameConfig bad = GameConfig::uniform(3, 5, 3, 1, Rule::semilocal);
  bad.coupling = Coupling::independent;
  GameState b = init_game(GameConfig::uniform(3, 5, 3));
  EXPECT_THROW(advance_independent(bad, b, rng), ConfigError);
}

TEST(Game, RunStopsAndCensors) {
  GameConfig c = GameConfig::uniform(2, 3, 2);
  Rng rng(9);
  RunResult r = run(c, init_game(c), StopCondition::max_steps_only(), 17, rng);
  EXPECT_FALSE(r.stopped);
  EXPECT_EQ(r.steps, 17);
  RunResult z = run(c, init_game(c), StopCondition::total_at_most(100), 17, rng);
  EXPECT_TRUE(z.stopped);
  EXPECT_EQ(z.steps, 0);
  RunResult o = run(c, init_game(c), StopCondition::one_survivor(), 1'000'000, rng);
  EXPECT_TRUE(o.stopped);
  EXPECT_EQ(o.final_state.alive_count, 1);
  EXPECT_THROW(StopCondition::some_weight_reaches(-1), DomainError);
}

TEST(Game, EnumerationOracleKnownDuration) {
  // two players, fair, total constant at 6: symmetric ruin duration 3 * 3
  EXPECT_NEAR(oracle::game_stop_time(GameConfig::uniform(2, 3, 2), StopCondition::one_survivor()), 9.0, 1e-9);
}

TEST(Game, MonteCarloMatchesEnumeration) {
  struct Case {
    GameConfig config;
    StopCondition stop;
  };
  std::vector<Case> cases = {
      {GameConfig::uniform(2, 3, 2), StopCondition::one_survivor()},
      {GameConfig::uniform(3, 4, 3), StopCondition::first_bankruptcy()},
      {GameConfig::uniform(3, 2, 3, 1, Rule::semilocal), StopCondition::one_survivor()},
      {GameConfig::uniform(3, 3, 4, 1, Rule::semilocal), StopCondition::total_at_most(4)},
  };
  McOptions opt;
  opt.replicas = 40'000;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    opt.seed = 100 + i;
    const double exact = oracle::game_stop_time(cases[i].config, cases[i].stop);
    Estimate e = estimate_stop_time(cases[i].config, cases[i].stop, opt);
    EXPECT_EQ(e.censored, 0);
    EXPECT_NEAR(e.mean, exact, 4 * e.std_error + 1e-9) << "case " << i;
  }
}
