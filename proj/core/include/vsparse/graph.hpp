#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vsparse/rational.hpp"

namespace vsparse {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  Rational weight;
};

// Vertex set {0..n-1} with a distinguished ordered terminal list and
// nonnegative weights on unordered pairs. Absent pairs weigh zero.
class WeightedGraph {
 public:
  // Throws std::invalid_argument on out-of-range or repeated terminals,
  // self loops, negative weights, or a pair listed twice.
  WeightedGraph(std::size_t n, std::vector<std::size_t> terminals, std::span<const Edge> edges = {});

  std::size_t vertex_count() const { return n_; }
  std::size_t terminal_count() const { return terminals_.size(); }
  std::span<const std::size_t> terminals() const { return terminals_; }
  std::size_t terminal(std::size_t position) const { return terminals_.at(position); }

  bool is_terminal(std::size_t v) const { return terminal_position_.at(v).has_value(); }
  std::optional<std::size_t> terminal_position(std::size_t v) const { return terminal_position_.at(v); }

  const Rational& weight(std::size_t u, std::size_t v) const;
  // Weights indexed by pair_index(u, v, vertex_count()).
  std::span<const Rational> pair_weights() const { return weights_; }

  // Positive-weight pairs with u < v in pair order.
  std::vector<Edge> edges() const;

  bool operator==(const WeightedGraph&) const = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> terminals_;
  std::vector<std::optional<std::size_t>> terminal_position_;
  std::vector<Rational> weights_;
};

}  // namespace vsparse
