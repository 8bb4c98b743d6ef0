#include "vsparse/random.hpp"

#include <stdexcept>
#include <vector>

#include "vsparse/pairs.hpp"

namespace vsparse {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) return next();
  return lo + next() % (span + 1);
}

bool Rng::chance(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw std::invalid_argument("probability must be in [0, 1]");
  return uniform(0, den - 1) < num;
}

Rational Rng::rational(std::uint64_t max_numerator, std::uint64_t max_denominator) {
  if (max_denominator == 0) throw std::invalid_argument("denominator bound must be positive");
  const std::uint64_t a = uniform(0, max_numerator);
  const std::uint64_t b = uniform(1, max_denominator);
  Rational r(mpz_class(std::to_string(a)), mpz_class(std::to_string(b)));
  r.canonicalize();
  return r;
}

WeightedGraph random_graph(Rng& rng, const RandomGraphOptions& options) {
  const std::size_t n = options.n;
  if (options.k == 0 || options.k > n) throw std::invalid_argument("terminal count must be in [1, n]");
  if (options.max_weight == 0) throw std::invalid_argument("max_weight must be positive");
  auto weight = [&] {
    Rational w;
    while (is_zero(w)) w = rng.rational(options.max_weight, options.max_denominator);
    return w;
  };
  std::vector<Rational> weights(pair_count(n));
  if (options.connected) {
    for (std::size_t v = 1; v < n; ++v) {
      const std::size_t u = rng.uniform(0, v - 1);
      weights[pair_index(u, v, n)] = weight();
    }
  }
  for (std::size_t e = 0; e < weights.size(); ++e) {
    if (is_zero(weights[e]) && rng.chance(options.edge_num, options.edge_den)) weights[e] = weight();
  }
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < weights.size(); ++e) {
    if (is_zero(weights[e])) continue;
    auto [i, j] = pair_at(e, n);
    edges.push_back({i, j, weights[e]});
  }
  std::vector<std::size_t> terminals(options.k);
  for (std::size_t p = 0; p < options.k; ++p) terminals[p] = p;
  return WeightedGraph(n, std::move(terminals), edges);
}

Metric random_metric(Rng& rng, std::size_t m, std::uint64_t max_value, std::uint64_t max_denominator) {
  std::vector<Rational> table(pair_count(m));
  for (auto& v : table) v = rng.rational(max_value, max_denominator);
  return shortest_path_closure(m, table);
}

DemandSet random_demands(Rng& rng, std::span<const std::size_t> terminals, std::size_t count,
                         std::uint64_t max_amount) {
  if (terminals.size() < 2) throw std::invalid_argument("demands need at least two terminals");
  if (max_amount == 0) throw std::invalid_argument("max_amount must be positive");
  std::vector<Demand> demands;
  demands.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t a = rng.uniform(0, terminals.size() - 1);
    std::size_t b = rng.uniform(0, terminals.size() - 2);
    if (b >= a) ++b;
    demands.push_back({terminals[a], terminals[b], Rational(static_cast<long>(rng.uniform(1, max_amount)))});
  }
  return DemandSet(std::move(demands));
}

}  // namespace vsparse
