#include <gtest/gtest.h>

#include "vsparse/cutting_plane.hpp"

namespace vsparse::lp {
namespace {

LinearProgram min_q() { return LinearProgram(Sense::kMinimize, {Rational(1)}); }

TEST(CuttingPlaneTest, NoOraclesSolvesMasterOnce) {
  auto result = cutting_plane(min_q(), {});
  EXPECT_TRUE(result.converged);
  EXPECT_EQ(result.status, CuttingPlaneStatus::kConverged);
  EXPECT_EQ(result.iterations, 1u);
  EXPECT_EQ(result.master.objective, 0);
  EXPECT_TRUE(result.cuts.empty());
}

TEST(CuttingPlaneTest, SingleCutConverges) {
  std::vector<SeparationOracle> oracles{[](std::span<const Rational> x) {
    std::vector<Constraint> rows;
    if (x[0] < 3) rows.push_back({{{0, 1}}, Relation::kGreaterEqual, 3});
    return rows;
  }};
  auto result = cutting_plane(min_q(), oracles);
  ASSERT_TRUE(result.converged);
  EXPECT_EQ(result.master.x[0], 3);
  EXPECT_EQ(result.cuts.size(), 1u);
  EXPECT_EQ(result.cuts_per_oracle, std::vector<std::size_t>{1});
  EXPECT_EQ(result.program.constraint_count(), 1u);
  // Re-running the oracle on the final point finds nothing.
  EXPECT_TRUE(oracles[0](result.master.x).empty());
}

TEST(CuttingPlaneTest, FirstReportingOracleEndsTheRound) {
  int second_calls = 0;
  std::vector<SeparationOracle> oracles{
      [](std::span<const Rational> x) {
        std::vector<Constraint> rows;
        if (x[0] < 1) rows.push_back({{{0, 1}}, Relation::kGreaterEqual, 1});
        return rows;
      },
      [&](std::span<const Rational> x) {
        ++second_calls;
        std::vector<Constraint> rows;
        if (x[0] < 2) rows.push_back({{{0, 1}}, Relation::kGreaterEqual, 2});
        return rows;
      }};
  auto result = cutting_plane(min_q(), oracles);
  ASSERT_TRUE(result.converged);
  EXPECT_EQ(result.master.x[0], 2);
  EXPECT_EQ(result.cuts_per_oracle, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(result.cuts[0].oracle, 0u);
  EXPECT_EQ(result.cuts[1].oracle, 1u);
  EXPECT_EQ(second_calls, 2);
}

TEST(CuttingPlaneTest, IterationCapIsReportedDistinctly) {
  std::vector<SeparationOracle> oracles{[](std::span<const Rational> x) {
    return std::vector<Constraint>{{{{0, 1}}, Relation::kGreaterEqual, x[0] + 1}};
  }};
  auto result = cutting_plane(min_q(), oracles, {.max_iterations = 5});
  EXPECT_FALSE(result.converged);
  EXPECT_EQ(result.status, CuttingPlaneStatus::kIterationLimit);
  EXPECT_EQ(result.iterations, 5u);
  EXPECT_EQ(result.master.x[0], 4);
}

TEST(CuttingPlaneTest, NonViolatedCutAborts) {
  std::vector<SeparationOracle> oracles{[](std::span<const Rational>) {
    return std::vector<Constraint>{{{{0, 1}}, Relation::kGreaterEqual, 0}};
  }};
  EXPECT_THROW(cutting_plane(min_q(), oracles), std::logic_error);
}

TEST(CuttingPlaneTest, MasterInfeasibleIsReported) {
  LinearProgram master = min_q();
  master.add_constraint({{{0, 1}}, Relation::kLessEqual, -1});
  auto result = cutting_plane(std::move(master), {});
  EXPECT_FALSE(result.converged);
  EXPECT_EQ(result.status, CuttingPlaneStatus::kMasterInfeasible);
}

}  // namespace
}  // namespace vsparse::lp
