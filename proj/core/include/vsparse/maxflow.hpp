#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vsparse/graph.hpp"
#include "vsparse/rational.hpp"

namespace vsparse {

struct FlowResult {
  Rational value;
  std::vector<bool> source_side;  // vertices reachable from the source in the final residual graph
};

// Maximum flow between two vertices of an undirected network with exact
// rational capacities (shortest augmenting paths).
FlowResult max_flow(std::size_t vertex_count, std::span<const Edge> edges, std::size_t source, std::size_t sink);

// Minimum cut separating terminal positions in `side_mask` from the remaining
// terminals, computed as a max flow after contracting each side to a single
// vertex. Throws std::invalid_argument if the mask is empty or full.
Rational contracted_min_cut(const WeightedGraph& g, std::uint64_t side_mask);

}  // namespace vsparse
