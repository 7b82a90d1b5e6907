#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ruinlab/ruinlab.hpp"

using namespace ruinlab;

namespace {

WalkSpec simple(double p, Position start, Position wall, WallKind kind = WallKind::absorbing, Position up = 1,
                Position down = 1) {
  WalkSpec w;
  w.up_step = up;
  w.up_prob = p;
  w.down_step = down;
  w.start = start;
  w.upper = {wall, kind};
  return w;
}

}  // namespace

TEST(Walk, SymmetricClosedForms) {
  for (Position W : {5, 10, 50}) {
    std::vector<double> h = hit_probability_profile(simple(0.5, 1, W));
    std::vector<double> t = absorption_time_profile(simple(0.5, 1, W));
    for (Position x = 1; x < W; ++x) {
      EXPECT_NEAR(h[x], static_cast<double>(x) / W, 1e-12);
      EXPECT_NEAR(t[x], static_cast<double>(x * (W - x)), 1e-9 * W * W);
    }
  }
}

TEST(Walk, BiasedRuin) {
  const double p = 0.4, r = 0.6 / 0.4;
  const Position B = 12;
  for (Position x = 1; x < B; ++x)
    EXPECT_NEAR(exact_hit_probability(simple(p, x, B)), (1 - std::pow(r, x)) / (1 - std::pow(r, B)), 1e-12);
}

TEST(Walk, SolversMatchFixedPointIteration) {
  std::vector<WalkSpec> specs = {simple(0.3, 2, 9, WallKind::absorbing, 3, 1),
                                 simple(0.25, 4, 11, WallKind::absorbing, 2, 2),
                                 simple(0.2, 6, 6, WallKind::reflecting, 3, 1),
                                 poorest_walk(4, 24, 2, 8), total_walk(3, 12, 2, 6), total_walk_halved(4, 20, 8)};
  for (const auto& w : specs) {
    oracle::WalkValues v = oracle::iterate_walk(w);
    std::vector<double> t = absorption_time_profile(w);
    for (Position x = 1; x < static_cast<Position>(t.size()); ++x)
      EXPECT_NEAR(t[x], v.time[x], 1e-8 * std::max(1.0, v.time[x])) << "x=" << x;
    if (!w.reflecting()) {
      std::vector<double> h = hit_probability_profile(w);
      for (Position x = 1; x < w.upper.position; ++x) EXPECT_NEAR(h[x], v.hit[x], 1e-10);
    }
  }
}

TEST(Walk, ERecurrenceSumsToAbsorption) {
  for (int n : {3, 4, 6})
    for (std::int64_t w0 : {6, 20, 45}) {
      WalkSpec w = poorest_walk(n, w0, 2, 2 * n);
      EVector e = solve_e_recurrence(w);
      double sum = 0;
      for (Position x = 1; x <= e.wall; ++x) sum += e.at(x);
      EXPECT_NEAR(sum, exact_expected_absorption(w), 1e-9 * sum);
      EXPECT_LT(e_recurrence_residual(w, e), 1e-9);
    }
}

TEST(Walk, FirstPassageIsDifferenceOfAbsorption) {
  WalkSpec w = total_walk_halved(4, 40, 8);
  std::vector<double> t = absorption_time_profile(w);
  for (Position to = 0; to < 20; to += 3)
    EXPECT_NEAR(exact_first_passage(w, 20, to), t[20] - t[to], 1e-9 * t[20]);
  // down step 2 goes through the linear solve; with floor 0 it is plain absorption
  WalkSpec two = simple(0.3, 9, 9, WallKind::reflecting, 3, 2);
  EXPECT_NEAR(exact_first_passage(two, 9, 0), oracle::iterate_walk(two).time[9], 1e-8 * oracle::iterate_walk(two).time[9]);
  EXPECT_GT(exact_first_passage(two, 9, 4), 0.0);
  EXPECT_THROW(exact_first_passage(two, 4, 9), DomainError);
}

TEST(Walk, ModelConstruction) {
  WalkSpec p = poorest_walk(4, 25, 3, 8);
  EXPECT_EQ(p.up_step, 7);
  EXPECT_DOUBLE_EQ(p.up_prob, 0.25);
  EXPECT_EQ(p.upper.position, 8);
  EXPECT_TRUE(p.reflecting());
  EXPECT_EQ(p.start, 8);
  WalkSpec h = total_walk_halved(6, 30, 12);
  EXPECT_EQ(h.up_step, 5);
  EXPECT_DOUBLE_EQ(h.up_prob, 2.0 / 6);
  EXPECT_EQ(h.upper.position, 15);
  EXPECT_THROW(poorest_walk(4, 25, 0, 8), std::exception);
  EXPECT_THROW(total_walk_halved(4, 30, 7), std::exception);
}

TEST(Walk, StepClampsAtReflectingWall) {
  WalkSpec w = simple(0.9, 5, 6, WallKind::reflecting, 4, 1);
  EXPECT_EQ(w.move(5, true), 6);
  EXPECT_EQ(w.move(1, false), 0);
  EXPECT_TRUE(w.is_absorbed(0));
  EXPECT_FALSE(w.is_absorbed(6));
  WalkSpec a = simple(0.9, 5, 6, WallKind::absorbing, 4, 1);
  EXPECT_TRUE(a.is_absorbed(9));
}

TEST(Walk, DenseCapAndValidation) {
  EXPECT_THROW(exact_expected_absorption(simple(0.5, 3, detail::kMaxDenseStates + 10)), std::exception);
  WalkSpec bad = simple(1.5, 3, 10);
  EXPECT_THROW(bad.validate(), std::exception);
  EXPECT_THROW(exact_hit_probability(simple(0.5, 3, 10, WallKind::reflecting)), std::exception);
}

// clamp-reflecting symmetric walk: holds at B with prob 1/2, so B -> 0 takes B(B+1)
TEST(Walk, ReflectingSymmetricFirstPassage) {
  for (Position B : {1, 5, 12}) {
    WalkSpec w = simple(0.5, B, B, WallKind::reflecting);
    EXPECT_NEAR(exact_first_passage(w, B, 0), static_cast<double>(B * (B + 1)), 1e-9 * B * B);
    EXPECT_NEAR(oracle::iterate_walk(w).time[B], static_cast<double>(B * (B + 1)), 1e-7 * B * B);
  }
}

TEST(Walk, ERecurrenceWallValue) {
  for (double p : {0.2, 0.5}) {
    EVector e = solve_e_recurrence(simple(p, 6, 6, WallKind::reflecting));
    EXPECT_NEAR(e.at(6), 1 / (1 - p), 1e-12);
    // single transient state: geometric holding time
    EVector one = solve_e_recurrence(simple(p, 1, 1, WallKind::reflecting));
    EXPECT_NEAR(one.at(1), 1 / (1 - p), 1e-12);
  }
}
