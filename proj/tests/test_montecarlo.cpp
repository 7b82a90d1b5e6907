#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>

#include "ruinlab/ruinlab.hpp"

using namespace ruinlab;

TEST(Rng, SplitmixReferenceValues) {
  // first outputs of the reference splitmix64 generator seeded with 0
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_NE(mix64(1, 0), mix64(0, 1));
  EXPECT_EQ(mix64(7, 3), mix64(7, 3));
}

TEST(Stats, SummarizeByHand) {
  std::vector<double> x = {1, 2, 3, 4};
  Estimate e = summarize(x, 1, 5, 0.95);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3 / 4), 1e-12);
  EXPECT_NEAR(e.ci_high - e.mean, 1.959963984540054 * e.std_error, 1e-9);
  EXPECT_EQ(e.censored, 1);
  EXPECT_EQ(e.seed, 5u);
  EXPECT_NEAR(normal_critical(0.99), 2.5758293035489004, 1e-9);
}

TEST(Parallel, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1003);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) { if (i == 7) throw DomainError("x"); }, 3), DomainError);
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResults) {
  GameConfig c = GameConfig::uniform(3, 4, 3);
  McOptions a;
  a.replicas = 3000;
  a.seed = 42;
  a.workers = 1;
  McOptions b = a;
  b.workers = 5;
  Estimate ea = estimate_stop_time(c, StopCondition::one_survivor(), a);
  Estimate eb = estimate_stop_time(c, StopCondition::one_survivor(), b);
  EXPECT_EQ(ea.mean, eb.mean);
  EXPECT_EQ(ea.std_error, eb.std_error);
}

TEST(MonteCarlo, CensoringIsReported) {
  GameConfig c = GameConfig::uniform(3, 50, 3);
  McOptions o;
  o.replicas = 200;
  o.max_steps = 10;
  std::vector<ReplicaRecord> trace;
  Estimate e = estimate_stop_time(c, StopCondition::one_survivor(), o, &trace);
  EXPECT_EQ(e.censored, 200);
  EXPECT_DOUBLE_EQ(e.mean, 10.0);
  ASSERT_EQ(trace.size(), 200u);
  EXPECT_FALSE(trace[0].stopped);
}

TEST(MonteCarlo, HitProbabilityCoversExact) {
  WalkSpec w = verify::fair_player_walk(3, 4, 10);
  McOptions o;
  o.replicas = 50'000;
  o.seed = 3;
  Estimate e = estimate_hit_probability(w, o);
  EXPECT_TRUE(e.covers(exact_hit_probability(w))) << e.mean;
}

TEST(MonteCarlo, WeightChangeDrift) {
  GameConfig c = GameConfig::uniform(4, 101, 8);
  McOptions o;
  o.replicas = 20'000;
  o.seed = 8;
  Estimate e = estimate_weight_change(c, 0, 100, o);
  EXPECT_NEAR(e.mean, expected_drift(100, 4, 8), 4 * e.std_error);
}

TEST(MonteCarlo, PstarSmallCase) {
  GameConfig c = GameConfig::uniform(2, 2, 2);
  c.coupling = Coupling::independent;
  McOptions o;
  o.replicas = 20'000;
  o.seed = 4;
  Estimate e = estimate_pstar_event(c, 4, 8, 100'000, o);
  EXPECT_GT(e.mean, 0.0);
  EXPECT_LE(e.mean, pstar_upper(2, 4, 8, 2) + 3 * e.std_error);
  EXPECT_THROW(estimate_pstar_event(c, 8, 4, 10, o), DomainError);
}

TEST(MonteCarlo, EffRecTwoPlayersIsEquality) {
  McOptions o;
  o.replicas = 20'000;
  o.seed = 1;
  EffRecReport r = verify_eff_rec(GameConfig::uniform(2, 3, 2), o);
  EXPECT_TRUE(r.verdict);
  EXPECT_TRUE(r.equality);
  EXPECT_TRUE(r.audit_ok);
  EXPECT_EQ(r.continuation_max.mean, 0.0);
}

TEST(MonteCarlo, OptionValidation) {
  McOptions o;
  o.replicas = 0;
  EXPECT_THROW(o.validate(), std::exception);
  o.replicas = 10;
  o.level = 1.5;
  EXPECT_THROW(o.validate(), std::exception);
}
