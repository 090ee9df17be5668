#include "linematch/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace linematch {
namespace {

TEST(BruteForce, SinglePair) {
  const auto m = brute_force(ProblemInstance::from_positions(std::vector{3.0}, std::vector{1.0}),
                             CostSpec::sqrt());
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.evaluations, EvalCounter{});
}

TEST(BruteForce, NestedPlanUnderSqrt) {
  const auto r = brute_force_detailed(
      ProblemInstance::from_positions(std::vector{0.0, 1.1}, std::vector{1.0, 2.0}),
      CostSpec::sqrt());
  EXPECT_EQ(r.best.pairs, (std::vector<MatchedPair>{{0, 1}, {1, 0}}));
  EXPECT_NEAR(r.best.total_cost, 1.7304413283899331, 1e-12);
  // The straight plan: 1 + sqrt(0.9).
  EXPECT_NEAR(r.runner_up_cost, 1.9486832980505138, 1e-12);
}

TEST(BruteForce, LinearCostEqualsMonotoneAssignment) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto inst = testing::random_instance(rng, n);
    std::vector<double> d, s;
    for (const auto& pt : inst.points()) (pt.role == Role::Demand ? d : s).push_back(pt.position);
    double monotone = 0.0;
    for (std::size_t j = 0; j < n; ++j) monotone += std::abs(d[j] - s[j]);
    EXPECT_NEAR(brute_force(inst, CostSpec::linear()).total_cost, monotone, 1e-12);
  }
}

TEST(BruteForce, TiesPickLexicographicallySmallest) {
  // Equal gaps under linear cost: straight and crossing plans cost the same.
  const auto inst = ProblemInstance::from_positions(std::vector{0.0, 2.0}, std::vector{1.0, 3.0});
  const auto flat = CostSpec::custom("flat", [](double) { return 1.0; });
  EXPECT_EQ(brute_force(inst, flat).pairs, (std::vector<MatchedPair>{{0, 0}, {1, 1}}));
}

TEST(BruteForce, SizeGuard) {
  std::mt19937_64 rng(42);
  EXPECT_THROW(brute_force(testing::random_instance(rng, 10), CostSpec::sqrt()), SizeError);
}

TEST(NonCrossingDp, SinglePair) {
  const auto m = noncrossing_dp(
      ProblemInstance::from_positions(std::vector{3.0}, std::vector{1.0}), CostSpec::log());
  EXPECT_EQ(m.pairs, (std::vector<MatchedPair>{{0, 0}}));
  EXPECT_NEAR(m.total_cost, std::log(2.0), 1e-15);
}

TEST(NonCrossingDp, FullyNestedUnderSqrt) {
  // D(0) D(1) S(2) S(3): nested sqrt(3) + 1 beats straight 2 sqrt(2).
  const auto inst = ProblemInstance::from_positions(std::vector{0.0, 1.0}, std::vector{2.0, 3.0});
  const auto dp = noncrossing_dp(inst, CostSpec::sqrt());
  EXPECT_EQ(dp.pairs, (std::vector<MatchedPair>{{0, 1}, {1, 0}}));
  EXPECT_NEAR(dp.total_cost, 2.732050807568877, 1e-12);
  EXPECT_NEAR(dp.total_cost, brute_force(inst, CostSpec::sqrt()).total_cost, 1e-12);
}

TEST(NonCrossingDp, AgreesWithBruteForce) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = testing::random_instance(rng, 1 + rng() % 8);
    for (const auto& cost : testing::builtin_costs()) {
      const auto dp = noncrossing_dp(inst, cost);
      EXPECT_TRUE(testing::is_non_crossing(inst, dp.pairs));
      EXPECT_TRUE(nearly_equal(dp.total_cost, brute_force(inst, cost).total_cost))
          << cost.label();
    }
  }
}

TEST(NonCrossingDp, MissesCrossingOptimumOfConvexCost) {
  // Under x^2 the crossing plan 0->2, 1->3 (cost 8) beats every non-crossing
  // one (best is 0->3, 1->2, cost 10).
  const auto inst = ProblemInstance::from_positions(std::vector{0.0, 1.0}, std::vector{2.0, 3.0});
  const auto square = CostSpec::custom("square", [](double x) { return x * x; });
  EXPECT_DOUBLE_EQ(noncrossing_dp(inst, square).total_cost, 10.0);
  EXPECT_DOUBLE_EQ(brute_force(inst, square).total_cost, 8.0);
}

}  // namespace
}  // namespace linematch
