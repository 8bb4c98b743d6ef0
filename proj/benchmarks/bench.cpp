#include <benchmark/benchmark.h>

#include "vsparse/extension.hpp"
#include "vsparse/lp.hpp"
#include "vsparse/operator.hpp"
#include "vsparse/pairs.hpp"
#include "vsparse/quality.hpp"
#include "vsparse/random.hpp"

namespace vsparse {
namespace {

WeightedGraph unit_star(std::size_t k) {
  std::vector<Edge> edges;
  std::vector<std::size_t> terminals;
  for (std::size_t i = 0; i < k; ++i) {
    edges.push_back({i, k, 1});
    terminals.push_back(i);
  }
  return WeightedGraph(k + 1, terminals, edges);
}

// Dense random LP: maximize c.x subject to A x <= b with A, b, c >= 0.
void BM_SimplexDense(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<Rational> objective(size);
  for (auto& c : objective) c = 1 + rng.rational(5, 3);
  lp::LinearProgram program(lp::Sense::kMaximize, objective);
  for (std::size_t r = 0; r < size; ++r) {
    lp::Constraint row{.relation = lp::Relation::kLessEqual, .rhs = 1 + rng.rational(9, 2)};
    for (std::size_t v = 0; v < size; ++v) row.terms.push_back({v, rng.rational(4, 3)});
    program.add_constraint(std::move(row));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve(program));
}
BENCHMARK(BM_SimplexDense)->Arg(5)->Arg(10)->Arg(20);

void BM_MinExtensionWarm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  WeightedGraph g = random_graph(rng, {.n = n, .k = 3, .connected = true});
  MinExtensionSolver solver(g);
  std::vector<Metric> metrics;
  for (int i = 0; i < 16; ++i) metrics.push_back(random_metric(rng, 3));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solver.value(metrics[i++ % metrics.size()]));
}
BENCHMARK(BM_MinExtensionWarm)->Arg(5)->Arg(8)->Arg(10);

void BM_MinExtensionCold(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  WeightedGraph g = random_graph(rng, {.n = n, .k = 3, .connected = true});
  Metric d = random_metric(rng, 3);
  for (auto _ : state) benchmark::DoNotOptimize(min_extension(g, d));
}
BENCHMARK(BM_MinExtensionCold)->Arg(5)->Arg(8);

void BM_FindOptimalOperatorStar(benchmark::State& state) {
  WeightedGraph g = unit_star(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_optimal_operator(g));
}
BENCHMARK(BM_FindOptimalOperatorStar)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_FindOptimalOperatorRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  WeightedGraph g = random_graph(rng, {.n = n, .k = 3, .connected = true});
  for (auto _ : state) benchmark::DoNotOptimize(find_optimal_operator(g));
}
BENCHMARK(BM_FindOptimalOperatorRandom)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_CutQuality(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  WeightedGraph g = unit_star(k);
  Sparsifier beta(k, std::vector<Rational>(pair_count(k), Rational(1, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(cut_quality(g, beta));
}
BENCHMARK(BM_CutQuality)->Arg(4)->Arg(6)->Arg(8);

}  // namespace
}  // namespace vsparse

BENCHMARK_MAIN();
