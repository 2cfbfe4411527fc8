#include <gtest/gtest.h>

#include <cmath>

#include "ercp/branching.hpp"
#include "oracles.hpp"

using namespace ercp;

TEST(Survival, ReferenceValues) {
  EXPECT_NEAR(survival_probability(0.05).y, 0.093701837073, 1e-9);
  EXPECT_NEAR(survival_probability(0.1).y, 0.176134143632, 1e-9);
  EXPECT_NEAR(survival_probability(0.15).y, 0.249002053219, 1e-9);
  EXPECT_NEAR(survival_probability(1.0).y, 0.796812130020, 1e-9);
  EXPECT_NEAR(survival_probability(10.0).y, 0.999983295230, 1e-9);
}

TEST(Survival, AgreesWithFixedPointIteration) {
  for (double eps = 0.02; eps < 3.0; eps += 0.07) {
    const double y = survival_probability(eps).y;
    EXPECT_NEAR(y, oracle::fixed_point_survival(eps), 1e-9) << eps;
  }
}

TEST(Survival, ResidualIsSmall) {
  for (double eps : {1e-5, 1e-3, 0.05, 0.5, 5.0, 50.0}) {
    const auto s = survival_probability(eps);
    EXPECT_LT(std::abs(s.y - (1.0 - std::exp(-(1.0 + eps) * s.y))), 1e-11) << eps;
    EXPECT_LT(s.residual, 1e-11);
    EXPECT_FALSE(s.subcritical);
  }
}

TEST(Survival, NonPositiveEpsIsZero) {
  for (double eps : {0.0, -0.1, -1.0}) {
    const auto s = survival_probability(eps);
    EXPECT_EQ(s.y, 0.0);
    EXPECT_TRUE(s.subcritical);
  }
}

TEST(Survival, NearCriticalAsymptotics) {
  const auto s = survival_probability(1e-8);
  EXPECT_TRUE(s.near_critical);
  EXPECT_NEAR(s.y / 2e-8, 1.0, 1e-6);
  // y = 2 eps - 8/3 eps^2 + O(eps^3)
  const double eps = 1e-4;
  EXPECT_NEAR(survival_probability(eps).y, 2 * eps - 8.0 / 3.0 * eps * eps, 1e-11);
}

TEST(Survival, Monotone) {
  double prev = 0;
  for (double eps = 0.001; eps < 10; eps *= 1.3) {
    const double y = survival_probability(eps).y;
    EXPECT_GT(y, prev);
    EXPECT_LT(y, 1.0);
    prev = y;
  }
}

TEST(MonteCarlo, BinomialTreeSurvival) {
  // Bin(100, 0.011): extinction q solves q = (1 - p + p q)^100.
  double q = 0;
  for (int i = 0; i < 100000; ++i) q = std::pow(1 - 0.011 + 0.011 * q, 100);
  const auto mc = gw_survival_monte_carlo(100, 0.011, 200, 20000, 5);
  EXPECT_EQ(mc.trials, 20000U);
  EXPECT_NEAR(mc.estimate, 1 - q, 5 * mc.std_error + 1e-3);
  EXPECT_NEAR(mc.std_error, std::sqrt(mc.estimate * (1 - mc.estimate) / 20000), 1e-6);
}

TEST(MonteCarlo, Deterministic) {
  const auto a = gw_survival_monte_carlo(20, 0.06, 100, 2000, 9);
  const auto b = gw_survival_monte_carlo(20, 0.06, 100, 2000, 9);
  EXPECT_EQ(a.survivors, b.survivors);
}

TEST(MonteCarlo, SubcriticalDiesOut) {
  const auto mc = gw_survival_monte_carlo(10, 0.05, 200, 2000, 1);
  EXPECT_EQ(mc.survivors, 0U);
}

TEST(RegularTree, FixedPointValues) {
  // plain iteration of s = 1 - (1 - p s)^(d-1), root 1 - (1 - p s)^d
  auto iterate = [](std::size_t d, double p) {
    double s = 0.5;
    for (int i = 0; i < 200000; ++i) s = 1 - std::pow(1 - p * s, static_cast<double>(d - 1));
    return 1 - std::pow(1 - p * s, static_cast<double>(d));
  };
  EXPECT_NEAR(regular_tree_survival(20, 1.15 / 20), 0.181209386308, 1e-9);
  EXPECT_NEAR(regular_tree_survival(100, 1.1 / 100), 0.161883294900, 1e-9);
  for (std::size_t d : {3, 8, 64, 1024}) EXPECT_NEAR(regular_tree_survival(d, 1.3 / d), iterate(d, 1.3 / d), 1e-9) << d;
}

TEST(RegularTree, LimitsAndThreshold) {
  EXPECT_EQ(regular_tree_survival(10, 1.0 / 9), 0.0);
  EXPECT_EQ(regular_tree_survival(10, 0.05), 0.0);
  EXPECT_NEAR(regular_tree_survival(3, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(regular_tree_survival(1000000, 1.1e-6), survival_probability(0.1).y, 1e-5);
  EXPECT_LT(regular_tree_survival(20, 1.15 / 20), survival_probability(0.15).y);
}
