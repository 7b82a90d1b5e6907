#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ruinlab/ruinlab.hpp"

using namespace ruinlab;

TEST(Quantity, LogSpaceArithmetic) {
  Quantity a = Quantity::from_value(3.0), b = Quantity::from_value(5.0);
  EXPECT_NEAR((a + b).value(), 8.0, 1e-12);
  EXPECT_NEAR((a * b).value(), 15.0, 1e-12);
  EXPECT_TRUE(a < b);
  Quantity huge = Quantity::from_ln(1000.0);
  EXPECT_TRUE(huge.overflowed());
  EXPECT_TRUE(std::isinf(huge.value()));
  EXPECT_NEAR((huge + huge).ln, 1000.0 + std::log(2.0), 1e-12);
  EXPECT_NEAR((Quantity{} + a).value(), 3.0, 1e-12);  // default is zero
  EXPECT_THROW(Quantity::from_value(-1.0), std::exception);
}

TEST(Bounds, RuinInterval) {
  Interval iv = ruin_prob_bounds(2, 4, 3);
  EXPECT_DOUBLE_EQ(iv.lower, 2.0 / 7);
  EXPECT_DOUBLE_EQ(iv.upper, 0.5);
  EXPECT_THROW(ruin_prob_bounds(5, 4, 3), DomainError);
  EXPECT_THROW(ruin_prob_bounds(0, 4, 3), DomainError);
}

TEST(Bounds, PstarByHand) {
  // n=2, I=2, W1=4, W2=8: (1-2/10)^2 + (2*2/8)(1-2/10) - (1-2/4)^2
  EXPECT_NEAR(pstar_upper(2, 4, 8, 2), 0.64 + 0.4 - 0.25, 1e-15);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(pstar_upper(2, 4, inf, 3), 1.0 - std::pow(0.5, 3), 1e-15);
  EXPECT_THROW(pstar_upper(2, 8, 4, 3), DomainError);
}

TEST(Bounds, Drift) {
  EXPECT_DOUBLE_EQ(expected_drift(1000, 4, 8), 1000.0);
  EXPECT_DOUBLE_EQ(expected_drift(1000, 4, 4), 0.0);
  EXPECT_DOUBLE_EQ(expected_drift(10, 3, 3, 2), -10.0);
}

TEST(Bounds, SpForms) {
  SpUpper s = sp_upper(2, 4, 12);
  EXPECT_NEAR(s.product.value(), 3.0 * std::pow(4.0 / 3, 6), 1e-9);
  EXPECT_NEAR(s.stated.value(), 4.0 * std::exp(12.0 / 8), 1e-9);
  // (1+1/(n-1))^m <= e^{m/(n-1)} but the stated form has e^{m/n}: either can be larger
  EXPECT_EQ(s.product_larger, s.product.value() > s.stated.value());
  EXPECT_THROW(sp_upper(5, 4, 12), DomainError);
}

TEST(Bounds, St2ClosedForm) {
  const double a = 1 + 2.0 / 2;  // n = 4
  St2Lower b = st2_lower(36, 18, 4, 72, 8);
  const double expected = 1.0 * (std::pow(a, 27) - std::pow(a, 18)) * (1 - std::exp(-2.0));
  EXPECT_NEAR(b.value.value(), expected, 1e-6 * expected);
  EXPECT_TRUE(b.conditions_met);
  EXPECT_FALSE(st2_lower(36, 18, 4, 72, 6).conditions_met);
  EXPECT_EQ(st2_lower(10, 10, 4, 72, 8).value.value(), 0.0);
  EXPECT_THROW(st2_lower(4, 2, 2, 8, 8), DomainError);
  EXPECT_THROW(st2_lower(2, 4, 4, 8, 8), DomainError);
}

TEST(Bounds, SemilocalReportNoOverflow) {
  BoundReport r = semilocal_report(4, 30, 8);
  EXPECT_TRUE(r.conditions_met);
  EXPECT_TRUE(r.flag("initial_condition"));
  // W0 = 120: e^{60} is finite, st2 at a^{60} = 2^60 too
  EXPECT_NEAR(r.entry("s_one_upper_printed").ln, std::log(8.0) + 60, 1e-12);
  EXPECT_NEAR(r.entry("s_one_upper_corrected").ln, std::log(8.0) + 15, 1e-12);
  BoundReport big = semilocal_report(4, 2000, 8);
  EXPECT_TRUE(big.entry("s_one_upper_printed").overflowed());
  EXPECT_TRUE(std::isfinite(big.entry("s_half_lower_intermediate").ln));
  EXPECT_FALSE(semilocal_report(4, 10, 8).conditions_met);
  EXPECT_FALSE(semilocal_report(4, 30, 7).conditions_met);
}
