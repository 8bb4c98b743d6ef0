#include <gtest/gtest.h>

#include "test_oracles.hpp"
#include "vsparse/extension.hpp"
#include "vsparse/operator.hpp"
#include "vsparse/quality.hpp"
#include "vsparse/random.hpp"

namespace vsparse {
namespace {

using testing::q;

Sparsifier uniform(std::size_t k, const Rational& w) { return Sparsifier(k, std::vector<Rational>(pair_count(k), w)); }

Sparsifier random_sparsifier(Rng& rng, std::size_t k) {
  std::vector<Rational> beta(pair_count(k));
  for (auto& b : beta) b = rng.rational(4, 3);
  return Sparsifier(k, beta);
}

// max over bipartitions of beta(delta_S) / mincut(S), straight from the
// definitions; nullopt when some cut has beta > 0 = mincut.
std::optional<Rational> brute_cut_quality(const WeightedGraph& g, const Sparsifier& beta) {
  const std::size_t k = g.terminal_count();
  Rational best = 0;
  for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << k); ++s) {
    const Rational num = testing::brute_cut_value(k, beta.pair_weights(), s);
    const Rational den = testing::brute_min_cut(g, s);
    if (den == 0) {
      if (num > 0) return std::nullopt;
      continue;
    }
    best = std::max(best, Rational(num / den));
  }
  return best;
}

TEST(SemanticsTest, NamesRoundTrip) {
  for (Semantics s : {Semantics::kCut, Semantics::kMetric, Semantics::kFlow}) {
    EXPECT_EQ(parse_semantics(to_string(s)), s);
  }
  EXPECT_THROW(parse_semantics("cuts"), std::invalid_argument);
  EXPECT_EQ(to_string(Completeness::kSampled), "sampled");
}

TEST(CutQualityTest, StarTriangleOfHalves) {
  WeightedGraph g = testing::star_graph(3);
  QualityReport r = cut_quality(g, uniform(3, q(1, 2)));
  ASSERT_FALSE(r.unbounded());
  EXPECT_EQ(*r.q_value, 1);
  EXPECT_TRUE(r.lower_ok);
  EXPECT_EQ(r.completeness, Completeness::kExact);
  const auto& w = std::get<CutWitness>(r.witness);
  EXPECT_EQ(w.side, 0b001u);
  EXPECT_EQ(w.sparsifier_value, 1);
  EXPECT_EQ(w.min_cut, 1);
}

TEST(CutQualityTest, FourStarCompleteHalves) {
  WeightedGraph g = testing::star_graph(4);
  QualityReport r = cut_quality(g, uniform(4, q(1, 2)));
  EXPECT_EQ(*r.q_value, q(3, 2));
  EXPECT_TRUE(r.lower_ok);
  EXPECT_TRUE(witness_reproduces(g, uniform(4, q(1, 2)), r));
}

TEST(CutQualityTest, TwoTerminalsWithTheMinCut) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    WeightedGraph g = random_graph(rng, {.n = rng.uniform(2, 6), .k = 2, .connected = true});
    Sparsifier h(2, {testing::brute_min_cut(g, 0b01)});
    EXPECT_EQ(*cut_quality(g, h).q_value, 1);
    EXPECT_EQ(*metric_quality_upper(g, h).q_value, 1);
  }
}

TEST(CutQualityTest, LowerViolationIsReported) {
  WeightedGraph g = testing::star_graph(3);
  QualityReport r = cut_quality(g, uniform(3, q(1, 10)));
  EXPECT_FALSE(r.lower_ok);
  const auto& v = std::get<CutWitness>(r.lower_violation);
  EXPECT_EQ(v.sparsifier_value, q(1, 5));
  EXPECT_EQ(v.min_cut, 1);
}

TEST(CutQualityTest, DisconnectedTerminalsAreUnbounded) {
  WeightedGraph g(2, {0, 1});
  QualityReport r = cut_quality(g, Sparsifier(2, {1}));
  EXPECT_TRUE(r.unbounded());
  EXPECT_TRUE(witness_reproduces(g, Sparsifier(2, {1}), r));
  EXPECT_EQ(*cut_quality(g, Sparsifier(2, {0})).q_value, 0);
  EXPECT_TRUE(metric_quality_upper(g, Sparsifier(2, {1})).unbounded());
}

TEST(CutQualityTest, TerminalCapIsEnforced) {
  WeightedGraph g = testing::star_graph(4);
  EXPECT_THROW(cut_quality(g, uniform(4, 1), 3), BudgetExceeded);
}

TEST(CutQualityTest, MatchesBruteForce) {
  Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.uniform(2, 7);
    const std::size_t k = rng.uniform(2, std::min<std::size_t>(n, 5));
    WeightedGraph g = random_graph(rng, {.n = n, .k = k, .max_denominator = 2});
    Sparsifier h = random_sparsifier(rng, k);
    QualityReport r = cut_quality(g, h);
    EXPECT_EQ(r.q_value, brute_cut_quality(g, h));
    EXPECT_TRUE(witness_reproduces(g, h, r));
  }
}

TEST(MetricQualityTest, StarTriangleOfHalvesIsExactlyOne) {
  WeightedGraph g = testing::star_graph(3);
  Sparsifier h = uniform(3, q(1, 2));
  QualityReport r = metric_quality_upper(g, h);
  EXPECT_EQ(*r.q_value, 1);
  EXPECT_EQ(r.completeness, Completeness::kUnchecked);
  // beta(d) is half the perimeter, which is exactly minext on this star.
  Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    Metric d = random_metric(rng, 3);
    EXPECT_EQ(h.evaluate(d), testing::star3_min_extension(d));
  }
  Rng sampler(34);
  QualityReport full = metric_quality(g, h, 50, sampler);
  EXPECT_TRUE(full.lower_ok);
  EXPECT_EQ(full.completeness, Completeness::kSampled);
}

TEST(MetricQualityTest, LowerCheckFindsTheShrunkenTriangle) {
  WeightedGraph g = testing::star_graph(3);
  Rng rng(35);
  LowerCheck c = metric_lower_check(g, uniform(3, q(1, 10)), 10, rng);
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.violation.has_value());
  EXPECT_LT(c.violation->sparsifier_value, c.violation->min_extension);
  EXPECT_EQ(c.cut_metrics_checked, 1u);  // stops at the first violation

  Rng rng2(35);
  LowerCheck fine = metric_lower_check(g, uniform(3, q(1, 2)), 10, rng2);
  EXPECT_TRUE(fine.ok);
  EXPECT_EQ(fine.samples_checked, 10u);
}

TEST(MetricQualityTest, WitnessReproducesAndBoundsSamples) {
  Rng rng(36);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = rng.uniform(3, 6);
    const std::size_t k = rng.uniform(2, std::min<std::size_t>(n, 4));
    WeightedGraph g = random_graph(rng, {.n = n, .k = k, .connected = true});
    Sparsifier h = random_sparsifier(rng, k);
    QualityReport r = metric_quality_upper(g, h);
    ASSERT_FALSE(r.unbounded());
    EXPECT_TRUE(witness_reproduces(g, h, r));
    // Cut metrics are metrics, so the cut ratio never exceeds the metric ratio.
    EXPECT_LE(*cut_quality(g, h).q_value, *r.q_value);
    MinExtensionSolver solver(g);
    for (int rep = 0; rep < 10; ++rep) {
      Metric d = random_metric(rng, k);
      EXPECT_LE(h.evaluate(d), *r.q_value * solver.value(d));
    }
    // Homogeneity in beta.
    std::vector<Rational> doubled(h.pair_weights().begin(), h.pair_weights().end());
    for (auto& b : doubled) b *= 3;
    EXPECT_EQ(*metric_quality_upper(g, Sparsifier(k, doubled)).q_value, 3 * *r.q_value);
  }
}

TEST(MetricQualityTest, EvaluatorMatchesFreshSolves) {
  Rng rng(37);
  WeightedGraph g = random_graph(rng, {.n = 6, .k = 3, .connected = true});
  QualityEvaluator evaluator(g);
  for (int trial = 0; trial < 10; ++trial) {
    Sparsifier h = random_sparsifier(rng, 3);
    EXPECT_EQ(evaluator.metric_upper(h).q_value, metric_quality_upper(g, h).q_value);
  }
}

TEST(OperatorDistortionTest, MatchesTheSolverAndTheInducedSparsifier) {
  Rng rng(38);
  std::vector<WeightedGraph> graphs{testing::star_graph(3), testing::star_graph(4), testing::path_graph()};
  for (int i = 0; i < 5; ++i) graphs.push_back(random_graph(rng, {.n = 5, .k = 3, .connected = true}));
  for (const WeightedGraph& g : graphs) {
    OperatorSolveReport r = find_optimal_operator(g);
    ASSERT_TRUE(r.converged);
    EXPECT_EQ(evaluate_operator_distortion(r.op, g), r.op.distortion());
    QualityEvaluator evaluator(g);
    EXPECT_EQ(evaluator.operator_distortion(r.op.table()), r.op.distortion());

    // beta = alpha o phi: every phi(d) extends d, so the lower bound holds,
    // and the metric quality is the operator's distortion.
    Sparsifier h = operator_to_sparsifier(r.op, g);
    QualityReport m = metric_quality(g, h, 20, rng);
    EXPECT_TRUE(m.lower_ok);
    EXPECT_EQ(m.q_value, r.op.distortion());
    QualityReport c = cut_quality(g, h);
    EXPECT_TRUE(c.lower_ok);
    EXPECT_LE(*c.q_value, r.op.distortion());
  }
}

TEST(OperatorDistortionTest, ZeroExtensionOperatorOnThePath) {
  WeightedGraph g = testing::path_graph();
  const std::vector<std::size_t> to_a{0, 1, 0};
  EXPECT_EQ(evaluate_operator_distortion(zero_extension_operator(g, to_a), g), 1);
}

TEST(ConcurrentFlowTest, PathExamples) {
  WeightedGraph g = testing::path_graph();
  EXPECT_EQ(max_concurrent_flow(g, DemandSet({{0, 1, 1}})), 1);
  EXPECT_EQ(max_concurrent_flow(g, DemandSet({{0, 1, 2}})), q(1, 2));
  EXPECT_EQ(max_concurrent_flow(Sparsifier(2, {1}), DemandSet({{0, 1, 1}})), 1);
  EXPECT_THROW(max_concurrent_flow(g, DemandSet({{0, 1, 0}})), std::invalid_argument);
}

TEST(ConcurrentFlowTest, StarWithAllPairs) {
  // Each leaf edge carries two of the three unit demands.
  WeightedGraph g = testing::star_graph(3);
  DemandSet all({{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  EXPECT_EQ(max_concurrent_flow(g, all), q(1, 2));
  // Triangle of halves: each demand routes 1/2 directly and 1/2 around.
  EXPECT_EQ(max_concurrent_flow(uniform(3, q(1, 2)), all), q(1, 2));
}

// Single-commodity concurrent flow is max flow / demand.
TEST(ConcurrentFlowTest, SingleDemandMatchesMinCut) {
  Rng rng(39);
  for (int trial = 0; trial < 20; ++trial) {
    WeightedGraph g = random_graph(rng, {.n = rng.uniform(2, 6), .k = 2, .connected = true});
    Rational amount = 1 + rng.rational(3, 2);
    EXPECT_EQ(max_concurrent_flow(g, DemandSet({{0, 1, amount}})), testing::brute_min_cut(g, 0b01) / amount);
  }
}

TEST(FlowProbeTest, SandwichHolds) {
  Rng rng(40);
  WeightedGraph g = testing::star_graph(3);
  Sparsifier h = uniform(3, q(1, 2));
  std::vector<DemandSet> sets;
  for (int i = 0; i < 6; ++i) sets.push_back(random_demands(rng, g.terminals(), 3));
  sets.push_back(DemandSet({{0, 1, 0}}));
  FlowProbe probe = flow_quality_probe(g, h, sets);
  EXPECT_TRUE(probe.report.lower_ok);
  EXPECT_EQ(*probe.metric.q_value, 1);
  EXPECT_EQ(probe.comparisons.size(), sets.size() - 1);
  for (const auto& c : probe.comparisons) {
    EXPECT_LE(c.graph_flow, c.sparsifier_flow);
    EXPECT_LE(c.sparsifier_flow, *probe.metric.q_value * c.graph_flow);
  }
  EXPECT_EQ(*probe.report.q_value, 1);
  EXPECT_TRUE(witness_reproduces(g, h, probe.report));
}

TEST(FlowProbeTest, ShrunkenSparsifierFailsTheLowerSide) {
  WeightedGraph g = testing::star_graph(3);
  Sparsifier h = uniform(3, q(1, 10));
  const std::vector<DemandSet> sets{DemandSet({{0, 1, 1}})};
  FlowProbe probe = flow_quality_probe(g, h, sets);
  EXPECT_FALSE(probe.report.lower_ok);
  EXPECT_TRUE(std::holds_alternative<DemandWitness>(probe.report.lower_violation));
}

}  // namespace
}  // namespace vsparse
