#include "vsparse/graph.hpp"

#include <stdexcept>
#include <string>

#include "vsparse/pairs.hpp"

namespace vsparse {

WeightedGraph::WeightedGraph(std::size_t n, std::vector<std::size_t> terminals, std::span<const Edge> edges)
    : n_(n), terminals_(std::move(terminals)), terminal_position_(n), weights_(pair_count(n)) {
  if (terminals_.empty() || terminals_.size() > n_) {
    throw std::invalid_argument("terminal count must be in [1, n]");
  }
  for (std::size_t pos = 0; pos < terminals_.size(); ++pos) {
    const std::size_t t = terminals_[pos];
    if (t >= n_) throw std::invalid_argument("terminal " + std::to_string(t) + " out of range");
    if (terminal_position_[t]) throw std::invalid_argument("terminal " + std::to_string(t) + " repeated");
    terminal_position_[t] = pos;
  }
  std::vector<bool> seen(weights_.size(), false);
  for (const Edge& e : edges) {
    if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self loop at vertex " + std::to_string(e.u));
    if (is_negative(e.weight)) throw std::invalid_argument("negative edge weight");
    const std::size_t idx = pair_index(e.u, e.v, n_);
    if (seen[idx]) {
      throw std::invalid_argument("pair {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} listed twice");
    }
    seen[idx] = true;
    weights_[idx] = e.weight;
  }
}

const Rational& WeightedGraph::weight(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_ || u == v) throw std::out_of_range("invalid vertex pair");
  return weights_[pair_index(u, v, n_)];
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t idx = 0; idx < weights_.size(); ++idx) {
    if (is_zero(weights_[idx])) continue;
    auto [u, v] = pair_at(idx, n_);
    out.push_back({u, v, weights_[idx]});
  }
  return out;
}

}  // namespace vsparse
