#include <gtest/gtest.h>

#include "test_oracles.hpp"
#include "vsparse/extension.hpp"
#include "vsparse/operator.hpp"
#include "vsparse/pairs.hpp"
#include "vsparse/random.hpp"

namespace vsparse {
namespace {

using testing::q;

// Path a=0, b=1, c=2 with phi(d)(a,c) and phi(d)(c,b) given as multiples of d(a,b).
ExtensionOperator path_operator(const Rational& ac, const Rational& cb) {
  const std::vector<std::size_t> terminals{0, 1};
  OperatorTable table = ExtensionOperator::identity_table(3, terminals);
  table[pair_index(0, 2, 3)][0] = ac;
  table[pair_index(2, 1, 3)][0] = cb;
  return ExtensionOperator(3, terminals, table, 0);
}

TEST(ExtensionOperatorTest, ValidatesShape) {
  const std::vector<std::size_t> terminals{0, 1};
  OperatorTable table = ExtensionOperator::identity_table(3, terminals);
  EXPECT_NO_THROW(ExtensionOperator(3, terminals, table, 1));

  OperatorTable bad_identity = table;
  bad_identity[pair_index(0, 1, 3)][0] = 2;
  EXPECT_THROW(ExtensionOperator(3, terminals, bad_identity, 1), std::invalid_argument);

  OperatorTable negative = table;
  negative[pair_index(0, 2, 3)][0] = -1;
  EXPECT_THROW(ExtensionOperator(3, terminals, negative, 1), std::invalid_argument);
  EXPECT_NO_THROW(ExtensionOperator(3, terminals, negative, 1, true));

  OperatorTable short_table(2, std::vector<Rational>(1));
  EXPECT_THROW(ExtensionOperator(3, terminals, short_table, 1), std::invalid_argument);
}

TEST(ExtensionOperatorTest, CoefficientUsesVertexIndices) {
  ExtensionOperator phi = path_operator(q(1, 3), q(2, 3));
  EXPECT_EQ(phi.coefficient(2, 0, 1, 0), q(1, 3));
  EXPECT_EQ(phi.coefficient(1, 2, 0, 1), q(2, 3));
  EXPECT_EQ(phi.coefficient(0, 1, 0, 1), 1);
}

TEST(ApplyTest, PathExamples) {
  Metric d = Metric::from_pairs(2, {3});
  Metric out = apply(path_operator(q(1, 3), q(2, 3)), d);
  EXPECT_EQ(out(0, 1), 3);
  EXPECT_EQ(out(0, 2), 1);
  EXPECT_EQ(out(2, 1), 2);

  EXPECT_THROW(apply(path_operator(0, 0), d), MetricError);
  EXPECT_THROW(apply(path_operator(1, 1), Metric::zero(3)), std::invalid_argument);
}

TEST(ApplyTest, ZeroExtensionOperatorCopiesTerminalDistances) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.uniform(2, 7);
    const std::size_t k = rng.uniform(1, n);
    WeightedGraph g = random_graph(rng, {.n = n, .k = k});
    std::vector<std::size_t> f(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto p = g.terminal_position(v);
      f[v] = p ? v : g.terminals()[rng.uniform(0, k - 1)];
    }
    ExtensionOperator phi = zero_extension_operator(g, f);
    Metric d = random_metric(rng, k);
    Metric out = apply(phi, d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Rational expected =
            f[i] == f[j] ? Rational(0) : d(*g.terminal_position(f[i]), *g.terminal_position(f[j]));
        EXPECT_EQ(out(i, j), expected);
      }
    }
  }
}

TEST(MembershipOracleTest, ValidOperatorHasNoViolation) {
  EXPECT_TRUE(membership_oracle(path_operator(1, 0)).empty());
  EXPECT_TRUE(membership_oracle(path_operator(q(1, 2), q(1, 2))).empty());
  EXPECT_TRUE(membership_oracle(path_operator(1, 1)).empty());
}

TEST(MembershipOracleTest, CollapsedMiddleViolatesTheLongTriangle) {
  auto violations = membership_oracle(path_operator(0, 0));
  ASSERT_EQ(violations.size(), 1u);
  const MembershipViolation& v = violations[0];
  EXPECT_EQ(std::minmax(v.long_a, v.long_b), std::minmax<std::size_t>(0, 1));
  EXPECT_EQ(v.apex, 2u);
  EXPECT_EQ(v.witness, Metric::from_pairs(2, {1}));
  EXPECT_EQ(v.excess, 1);
  EXPECT_GT(v.cut.evaluate(path_operator(0, 0).table(), 0), 0);
  EXPECT_LE(v.cut.evaluate(path_operator(1, 0).table(), 0), 0);
}

TEST(MembershipOracleTest, OverlongSideViolates) {
  // phi(d)(a,c) = 2 d(a,b) breaks d(a,c) <= d(a,b) + d(b,c).
  auto violations = membership_oracle(path_operator(2, 0));
  ASSERT_FALSE(violations.empty());
  for (const auto& v : violations) EXPECT_GT(v.excess, 0);
}

TEST(MembershipOracleTest, NegativeRowsCheckedOnRequest) {
  const std::vector<std::size_t> terminals{0, 1};
  OperatorTable table = ExtensionOperator::identity_table(3, terminals);
  table[pair_index(0, 2, 3)][0] = -1;
  table[pair_index(2, 1, 3)][0] = 2;
  MembershipOracle oracle(3, terminals, true);
  auto violations = oracle.separate(table);
  ASSERT_FALSE(violations.empty());
  bool saw_nonnegativity = false;
  for (const auto& v : violations) saw_nonnegativity |= v.nonnegativity_row;
  EXPECT_TRUE(saw_nonnegativity);
}

// Brute-force membership: phi maps every metric to a metric iff it does so
// for the extreme rays of the cone; on 3 terminals those are the cut metrics,
// so checking all cut metrics and random metrics must agree with the oracle.
TEST(MembershipOracleTest, AgreesWithSampling) {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4;
    const std::vector<std::size_t> terminals{0, 1, 2};
    OperatorTable table = ExtensionOperator::identity_table(n, terminals);
    for (std::size_t v = 0; v < 3; ++v) {
      for (std::size_t t = 0; t < 3; ++t) table[pair_index(v, 3, n)][t] = rng.rational(2, 2);
    }
    ExtensionOperator phi(n, terminals, table, 0);
    bool all_metric = true;
    for (std::uint64_t s = 1; s < 7; ++s) {
      auto values = apply_values(table, n, cut_metric(s, 3));
      all_metric &= std::holds_alternative<std::monostate>(find_violation(n, values));
    }
    EXPECT_EQ(membership_oracle(phi).empty(), all_metric);
    if (all_metric) {
      for (int rep = 0; rep < 10; ++rep) EXPECT_NO_THROW(apply(phi, random_metric(rng, 3)));
    }
  }
}

TEST(DistortionOracleTest, PathExamples) {
  WeightedGraph g = testing::path_graph();
  ExtensionOperator to_a = path_operator(0, 1);
  EXPECT_FALSE(distortion_oracle(to_a, 1, g).has_value());

  auto v = distortion_oracle(to_a, q(1, 2), g);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->operator_cost, v->min_extension);
  EXPECT_GT(v->operator_cost, q(1, 2) * v->min_extension);
  EXPECT_GT(v->cut.evaluate(to_a.table(), q(1, 2)), 0);
  EXPECT_EQ(restrict(v->vertex_metric, g.terminals()), v->terminal_metric);
  EXPECT_EQ(v->min_extension, min_extension(g, v->terminal_metric).value);

  // phi(a,c) = phi(c,b) = d(a,b) costs twice the min extension.
  ExtensionOperator wide = path_operator(1, 1);
  EXPECT_TRUE(distortion_oracle(wide, q(3, 2), g).has_value());
  EXPECT_FALSE(distortion_oracle(wide, 2, g).has_value());
}

TEST(DistortionOracleTest, IsolatedVerticesCostNothing) {
  // Vertex 3 has no edges, so phi may place it anywhere.
  const std::vector<Edge> edges{{0, 2, 1}, {2, 1, 1}};
  WeightedGraph g(4, {0, 1}, edges);
  const std::vector<std::size_t> terminals{0, 1};
  OperatorTable table = ExtensionOperator::identity_table(4, terminals);
  table[pair_index(0, 2, 4)][0] = 1;
  table[pair_index(0, 3, 4)][0] = 1;
  table[pair_index(1, 3, 4)][0] = 1;
  ExtensionOperator phi(4, terminals, table, 0);
  EXPECT_FALSE(distortion_oracle(phi, 1, g).has_value());
}

OperatorSolveReport solve(const WeightedGraph& g, OperatorSolveOptions options = {}) {
  OperatorSolveReport r = find_optimal_operator(g, options);
  EXPECT_TRUE(r.converged) << to_string(r.status);
  EXPECT_EQ(r.status, OperatorSolveStatus::kConverged);
  return r;
}

TEST(FindOptimalOperatorTest, AllTerminalsGivesOne) {
  Rng rng(23);
  WeightedGraph g = testing::with_all_terminals(random_graph(rng, {.n = 4, .k = 1, .connected = true}));
  OperatorSolveReport r = solve(g);
  EXPECT_EQ(r.op.distortion(), 1);
  EXPECT_EQ(r.op.table(), ExtensionOperator::identity_table(4, g.terminals()));
}

TEST(FindOptimalOperatorTest, TwoTerminalsGiveOneAndTheMinCut) {
  Rng rng(24);
  for (int trial = 0; trial < 8; ++trial) {
    WeightedGraph g = random_graph(rng, {.n = rng.uniform(2, 5), .k = 2, .max_denominator = 2, .connected = true});
    OperatorSolveReport r = solve(g);
    EXPECT_EQ(r.op.distortion(), 1);
    Sparsifier h = operator_to_sparsifier(r.op, g);
    EXPECT_EQ(h.weight(0, 1), testing::brute_min_cut(g, 0b01));
  }
}

TEST(FindOptimalOperatorTest, PathGivesOne) {
  OperatorSolveReport r = solve(testing::path_graph());
  EXPECT_EQ(r.op.distortion(), 1);
  EXPECT_EQ(operator_to_sparsifier(r.op, testing::path_graph()).weight(0, 1), 1);
}

TEST(FindOptimalOperatorTest, StarValues) {
  EXPECT_EQ(solve(testing::star_graph(3)).op.distortion(), q(4, 3));
  EXPECT_EQ(solve(testing::star_graph(4)).op.distortion(), q(3, 2));
}

TEST(FindOptimalOperatorTest, SignedOperatorsReachOneOnTheStar) {
  OperatorSolveReport r = solve(testing::star_graph(3), {.allow_negative = true});
  EXPECT_EQ(r.op.distortion(), 1);
  bool has_negative = false;
  for (const auto& row : r.op.table()) {
    for (const auto& c : row) has_negative |= c < 0;
  }
  EXPECT_TRUE(has_negative);
}

TEST(FindOptimalOperatorTest, WithoutSeedsSameOptimum) {
  OperatorSolveReport r = solve(testing::star_graph(3), {.seed_cut_metrics = false});
  EXPECT_EQ(r.seed_cuts, 0u);
  EXPECT_EQ(r.op.distortion(), q(4, 3));
}

TEST(FindOptimalOperatorTest, IterationCapIsReported) {
  OperatorSolveReport r =
      find_optimal_operator(testing::star_graph(4), {.limits = {.max_iterations = 1}, .seed_cut_metrics = false});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.status, OperatorSolveStatus::kIterationLimit);
}

TEST(FindOptimalOperatorTest, Deterministic) {
  Rng rng(25);
  WeightedGraph g = random_graph(rng, {.n = 5, .k = 3, .connected = true});
  OperatorSolveReport a = solve(g);
  OperatorSolveReport b = solve(g);
  EXPECT_EQ(a.op, b.op);
  EXPECT_EQ(a.master_iterations, b.master_iterations);
  ASSERT_EQ(a.worst_metrics.size(), b.worst_metrics.size());
  for (std::size_t i = 0; i < a.worst_metrics.size(); ++i) {
    EXPECT_EQ(a.worst_metrics[i].terminal_metric, b.worst_metrics[i].terminal_metric);
  }
}

// The returned operator is a metric extension operator, its binding rows are
// tight when recomputed from scratch, and Q is sandwiched between 1 and the
// distortion of the best 0-extension for a few sampled metrics.
TEST(FindOptimalOperatorTest, RandomInstancesAudit) {
  Rng rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = rng.uniform(3, 5);
    const std::size_t k = rng.uniform(2, std::min<std::size_t>(n, 3));
    WeightedGraph g = random_graph(rng, {.n = n, .k = k, .connected = true});
    OperatorSolveReport r = solve(g);
    const Rational& big_q = r.op.distortion();
    EXPECT_GE(big_q, 1);
    EXPECT_TRUE(membership_oracle(r.op).empty());
    EXPECT_FALSE(distortion_oracle(r.op, big_q, g).has_value());

    ASSERT_FALSE(r.worst_metrics.empty());
    for (const WorstMetric& w : r.worst_metrics) {
      const Rational c = min_extension(g, w.terminal_metric).value;
      EXPECT_EQ(c, w.min_extension);
      EXPECT_EQ(alpha_cost(g, apply(r.op, w.terminal_metric)), big_q * c);
    }

    for (int rep = 0; rep < 10; ++rep) {
      Metric d = random_metric(rng, k);
      const Rational c = min_extension(g, d).value;
      EXPECT_LE(alpha_cost(g, apply(r.op, d)), big_q * c);
    }
  }
}

TEST(OperatorToSparsifierTest, Examples) {
  WeightedGraph g = testing::path_graph();
  EXPECT_EQ(operator_to_sparsifier(path_operator(0, 1), g).weight(0, 1), 1);
  EXPECT_EQ(operator_to_sparsifier(path_operator(1, 1), g).weight(0, 1), 2);

  Rng rng(27);
  WeightedGraph all = testing::with_all_terminals(random_graph(rng, {.n = 4, .k = 1}));
  Sparsifier h = operator_to_sparsifier(solve(all).op, all);
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t r = p + 1; r < 4; ++r) EXPECT_EQ(h.weight(p, r), all.weight(p, r));
  }
}

// beta(d_Y) equals alpha(phi(d_Y)) for every terminal metric.
TEST(OperatorToSparsifierTest, EvaluatesLikeTheOperator) {
  Rng rng(28);
  for (int trial = 0; trial < 6; ++trial) {
    WeightedGraph g = random_graph(rng, {.n = 5, .k = 3, .max_denominator = 2, .connected = true});
    OperatorSolveReport r = solve(g);
    Sparsifier h = operator_to_sparsifier(r.op, g);
    for (int rep = 0; rep < 10; ++rep) {
      Metric d = random_metric(rng, 3);
      EXPECT_EQ(h.evaluate(d), alpha_cost(g, apply(r.op, d)));
    }
  }
}

}  // namespace
}  // namespace vsparse
