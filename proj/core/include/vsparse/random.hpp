#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "vsparse/demand.hpp"
#include "vsparse/graph.hpp"
#include "vsparse/metric.hpp"

namespace vsparse {

// Seeded generator. Integer draws use a fixed modulo mapping over the raw
// mt19937_64 stream instead of std::uniform_int_distribution, whose output is
// not specified across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform-ish integer in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den);
  // a/b with a in [0, max_numerator], b in [1, max_denominator].
  Rational rational(std::uint64_t max_numerator, std::uint64_t max_denominator);

 private:
  std::mt19937_64 engine_;
};

struct RandomGraphOptions {
  std::size_t n = 5;
  std::size_t k = 2;  // terminals are vertices 0..k-1
  std::uint64_t edge_num = 1;  // each pair is an edge with probability edge_num/edge_den
  std::uint64_t edge_den = 2;
  std::uint64_t max_weight = 4;
  std::uint64_t max_denominator = 1;
  bool connected = false;  // adds a random spanning tree first
};

WeightedGraph random_graph(Rng& rng, const RandomGraphOptions& options);

// Shortest-path closure of a random nonnegative pair table; entries may be 0.
Metric random_metric(Rng& rng, std::size_t m, std::uint64_t max_value = 8, std::uint64_t max_denominator = 3);

// `count` demands between distinct random terminals, amounts in [1, max_amount].
DemandSet random_demands(Rng& rng, std::span<const std::size_t> terminals, std::size_t count,
                         std::uint64_t max_amount = 3);

}  // namespace vsparse
