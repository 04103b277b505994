#include <gtest/gtest.h>

#include <cmath>

#include "hiercoop/hierarchy.hpp"

using namespace hiercoop;

namespace ref {
// Independent fixed-point recursion at 40 digits, alpha = 3, n = 1e4.
constexpr double q2_iterates[] = {4.129560700608594, 3.2351703958938995, 3.151901428330858,
                                  3.1379802885037162, 3.1355044966760506};
constexpr double q2_limit = 3.134961854962623;
constexpr double q3_limit = 3.257942772146313;
constexpr double t_real_1e7 = 3.2500605506553665;
constexpr double t_real_1e5 = 2.3611868460403725;
constexpr double t_real_1e2 = 0.47086577914777500;
}  // namespace ref

TEST(FixedPoint, GoldenTraceAlpha3Q2) {
  const FixedPointTrace tr = coding_rate_fixed_point(3.0, 2, 10000);
  ASSERT_GE(tr.iterates.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(tr.iterates[i], ref::q2_iterates[i], 1e-9) << i;
  EXPECT_TRUE(tr.converged);
  EXPECT_LE(tr.iterations_used, kFixedPointMaxIter);
  EXPECT_NEAR(tr.r_star, ref::q2_limit, 1e-8);
  EXPECT_NEAR(coding_rate_fixed_point(3.0, 3, 10000).r_star, ref::q3_limit, 1e-8);
}

TEST(FixedPoint, MonotoneNonIncreasingOnGrid) {
  for (double alpha = 2.0; alpha <= 4.0 + 1e-12; alpha += 0.25) {
    for (int q : {1, 2, 3}) {
      const FixedPointTrace tr = coding_rate_fixed_point(alpha, q, 10000);
      for (std::size_t i = 1; i < tr.iterates.size(); ++i)
        EXPECT_GE(tr.iterates[i - 1] - tr.iterates[i], -1e-12) << alpha << " " << q << " " << i;
      EXPECT_LE(tr.r_star, tr.iterates.front());
      EXPECT_GT(tr.r_star, 0.0);
    }
  }
}

TEST(FixedPoint, LargerExpansionRaisesLimit) {
  EXPECT_LT(coding_rate_fixed_point(3.0, 1, 10000).r_star, coding_rate_fixed_point(3.0, 2, 10000).r_star);
  EXPECT_LT(coding_rate_fixed_point(3.0, 2, 10000).r_star, coding_rate_fixed_point(3.0, 3, 10000).r_star);
}

TEST(FixedPoint, Preconditions) {
  EXPECT_THROW(coding_rate_fixed_point(3.0, 0, 10000), std::domain_error);
  EXPECT_THROW(coding_rate_fixed_point(3.0, 2, 10000, InterferenceModel::RingDistance, 1e-9, 1),
               std::domain_error);
  const FixedPointTrace capped = coding_rate_fixed_point(3.0, 1, 10000, InterferenceModel::RingDistance, 1e-9, 5);
  EXPECT_FALSE(capped.converged);
  EXPECT_EQ(capped.iterations_used, 5);
}

TEST(FirstStepMargin, MarginNonNegative) {
  EXPECT_GE(first_step_margin(3.0, 1, 10000), 0.0);
  EXPECT_GE(first_step_margin(3.0, 2, 10000), 0.0);
  EXPECT_GE(first_step_margin(2.0, 5, 10000), 0.0);
  for (double alpha = 2.0; alpha <= 4.0 + 1e-12; alpha += 0.1)
    for (int q = 1; q <= 5; ++q) EXPECT_GE(first_step_margin(alpha, q, 10000), -1e-9) << alpha << " " << q;
}

TEST(HierarchyThroughput, EnhancedOverConventionalRatio) {
  for (int reuse : {6, 7, 9}) {
    for (int t = 1; t <= 6; ++t) {
      const double ratio = hierarchy_throughput(1e6, t, reuse, 2, Scheme::EnhancedHierarchy) /
                           hierarchy_throughput(1e6, t, reuse, 2, Scheme::ConventionalHierarchy);
      const double expect = std::pow(reuse, t * (t - 1.0) / (t + 1.0));
      EXPECT_NEAR(ratio, expect, 1e-12 * expect);
      if (t > 1) EXPECT_GT(ratio, 1.0);
    }
  }
  EXPECT_THROW(hierarchy_throughput(1e6, 2, 7, 2, Scheme::SingleStage), std::invalid_argument);
}

TEST(SumRateHier, MillionNodeTwoStageExample) {
  const double rc = 3.1;
  const HierarchyPlan plan = sum_rate_hier(1000000, 7, 2, Scheme::EnhancedHierarchy, rc, 2);
  EXPECT_NEAR(plan.sum_rate, rc * 1e4 / (9 * std::pow(7.0, 4.0 / 3.0)), 1e-9);
  EXPECT_EQ(plan.cluster_sizes.size(), 2u);
  EXPECT_NEAR(plan.cluster_sizes[1], std::pow(1e6 / (49 * std::pow(3.0, 1.5)), 2.0 / 3.0), 1e-6);
  EXPECT_FALSE(plan.degenerate);
}

TEST(SumRateHier, ConventionalFirstStage) {
  const HierarchyPlan plan = sum_rate_hier(1000000, 7, 1, Scheme::ConventionalHierarchy, 1.0, 2);
  EXPECT_NEAR(plan.cluster_sizes[0], 1000.0 / (7 * std::sqrt(3.0)), 1e-9);
  EXPECT_NEAR(plan.throughput, 1000.0 / (2 * 7 * std::sqrt(3.0)), 1e-9);
}

TEST(SumRateHier, FlagsSubNodeClusters) {
  EXPECT_TRUE(sum_rate_hier(100, 7, 3, Scheme::EnhancedHierarchy, 1.0, 2).degenerate);
  EXPECT_THROW(sum_rate_hier(100, 7, 2, Scheme::SingleStage, 1.0, 2), std::invalid_argument);
}

TEST(LocalThroughput, FirstStageForm) {
  for (double m : {50.0, 1234.0, 1e6})
    EXPECT_NEAR(local_throughput(m, 1, 7, 2), std::sqrt(m) / (2 * 49 * std::sqrt(3.0)), 1e-12 * m);
  double prev = 0.0;
  for (double n = 1e2; n < 1e10; n *= 10) {
    EXPECT_GT(local_throughput(n, 3, 7, 2), prev);
    prev = local_throughput(n, 3, 7, 2);
  }
}

TEST(OptimalStages, ClosedFormValues) {
  EXPECT_NEAR(optimal_stages(10000000, 7).t_real, ref::t_real_1e7, 1e-12);
  EXPECT_NEAR(optimal_stages(10000000, 7).t_real, 3.250, 1e-3);
  EXPECT_NEAR(optimal_stages(100000, 7).t_real, ref::t_real_1e5, 1e-12);
  EXPECT_NEAR(optimal_stages(100, 7).t_real, ref::t_real_1e2, 1e-12);
  EXPECT_EQ(optimal_stages(100, 7).t_int, 1);
  EXPECT_THROW(optimal_stages(7, 7), std::domain_error);
}

TEST(OptimalStages, NeverMoreThanFour) {
  for (double alpha : {2.0, 2.5, 3.0, 3.5, 4.0}) {
    const int reuse = hierarchy_reuse(alpha);
    for (double n = 16; n <= 1e9; n *= 1.25) {
      const StageCount sc = optimal_stages(static_cast<std::uint64_t>(n), reuse);
      EXPECT_LE(sc.t_int, 4) << n << " " << alpha;
      EXPECT_GE(sc.t_int, 1);
    }
  }
}

TEST(OptimalStages, IntegerChoiceIsBruteForceArgmax) {
  for (std::uint64_t n : {1000ULL, 100000ULL, 10000000ULL, 1000000000ULL}) {
    const int t_int = optimal_stages(n, 7).t_int;
    for (int t = 1; t <= kMaxStages; ++t)
      EXPECT_LE(hierarchy_throughput(n, t, 7, 2, Scheme::EnhancedHierarchy),
                hierarchy_throughput(n, t_int, 7, 2, Scheme::EnhancedHierarchy));
  }
}

namespace {

double central_difference(auto f, double x) {
  const double h = 1e-4;
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace

TEST(OptimalStages, TRealIsStationaryPoint) {
  // Log objective whose stationarity condition the t_real closed form solves.
  for (double n : {1e4, 1e5, 1e7, 1e9}) {
    const double b = std::log(n / 7.0);
    const auto g = [&](double t) { return t / (t + 1) * b - std::log(t + 1) - t * std::log(std::sqrt(3.0)); };
    const double t_real = optimal_stages(static_cast<std::uint64_t>(n), 7).t_real;
    EXPECT_LE(std::abs(central_difference(g, t_real)), 1e-6) << n;
  }
}

TEST(OptimalStages, ExactStationaryPointOfEnhancedRate) {
  for (double n : {1e4, 1e5, 1e7, 1e9}) {
    for (int q : {1, 2, 3}) {
      const auto f = [&](double t) {
        return t / (t + 1) * std::log(n) - std::log(t + 1) - 2 * t / (t + 1) * std::log(7.0) -
               t * std::log(std::sqrt(1.0 + q));
      };
      const double ts = stationary_stages_exact(static_cast<std::uint64_t>(n), 7, q);
      EXPECT_LE(std::abs(central_difference(f, ts)), 1e-6) << n << " " << q;
    }
  }
}

TEST(HierarchicalReport, StageOneUsesSingleStage) {
  const auto cfg = NetworkConfig::make(10000, 3.0);
  const HierarchyResult r = hierarchical_report(cfg, 1, Scheme::EnhancedHierarchy);
  EXPECT_TRUE(r.uses_single_stage);
  EXPECT_NEAR(r.report.sum_rate, 20.857431248012906527, 1e-9);
  const HierarchyResult r2 = hierarchical_report(cfg, 2, Scheme::EnhancedHierarchy);
  EXPECT_FALSE(r2.uses_single_stage);
  EXPECT_NEAR(r2.report.coding_rate, ref::q2_limit, 1e-8);
  EXPECT_EQ(r2.report.params.t, 2);
  EXPECT_EQ(r2.report.sum_rate, r2.report.coding_rate * r2.report.packet_throughput);
  EXPECT_THROW(hierarchical_report(cfg, 2, Scheme::SingleStage), std::invalid_argument);
}

TEST(HierarchicalReport, BestStageGrowsWithN) {
  EXPECT_EQ(best_hierarchical_report(NetworkConfig::make(100, 3.0), Scheme::EnhancedHierarchy).plan.t, 1);
  const HierarchyResult big = best_hierarchical_report(NetworkConfig::make(100000000, 3.0), Scheme::EnhancedHierarchy);
  EXPECT_GE(big.plan.t, 2);
  EXPECT_LE(big.plan.t, 4);
  for (std::uint64_t n : {10000ULL, 1000000ULL, 100000000ULL}) {
    const auto cfg = NetworkConfig::make(n, 3.0);
    EXPECT_GE(best_hierarchical_report(cfg, Scheme::EnhancedHierarchy).report.sum_rate,
              best_hierarchical_report(cfg, Scheme::ConventionalHierarchy).report.sum_rate);
  }
}

TEST(Scaling, EnhancedSlopeMatchesExponent) {
  for (int t = 2; t <= 4; ++t) {
    const auto rate = [&](std::uint64_t n) {
      return hierarchical_report(NetworkConfig::make(n, 3.0), t, Scheme::EnhancedHierarchy).report.sum_rate;
    };
    const double slope = (std::log(rate(1000000000ULL)) - std::log(rate(1000000ULL))) / std::log(1000.0);
    EXPECT_NEAR(slope, t / (t + 1.0), 0.02) << t;
  }
}
