#include "vsparse/maxflow.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

namespace vsparse {

namespace {

struct Arc {
  std::size_t to;
  std::size_t reverse;
  Rational residual;
};

}  // namespace

FlowResult max_flow(std::size_t vertex_count, std::span<const Edge> edges, std::size_t source, std::size_t sink) {
  if (source >= vertex_count || sink >= vertex_count || source == sink) {
    throw std::invalid_argument("invalid source/sink for max flow");
  }
  std::vector<std::vector<Arc>> adj(vertex_count);
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
    if (is_negative(e.weight)) throw std::invalid_argument("negative capacity");
    if (e.u == e.v || is_zero(e.weight)) continue;
    adj[e.u].push_back({e.v, adj[e.v].size(), e.weight});
    adj[e.v].push_back({e.u, adj[e.u].size() - 1, e.weight});
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  FlowResult result;
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> parent(vertex_count, {kNone, kNone});
    parent[source] = {source, kNone};
    std::deque<std::size_t> queue{source};
    while (!queue.empty() && parent[sink].first == kNone) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a = 0; a < adj[u].size(); ++a) {
        const Arc& arc = adj[u][a];
        if (parent[arc.to].first != kNone || !is_positive(arc.residual)) continue;
        parent[arc.to] = {u, a};
        queue.push_back(arc.to);
      }
    }
    if (parent[sink].first == kNone) {
      result.source_side.assign(vertex_count, false);
      for (std::size_t v = 0; v < vertex_count; ++v) result.source_side[v] = parent[v].first != kNone;
      return result;
    }
    Rational bottleneck;
    bool first = true;
    for (std::size_t v = sink; v != source; v = parent[v].first) {
      const Arc& arc = adj[parent[v].first][parent[v].second];
      if (first || arc.residual < bottleneck) {
        bottleneck = arc.residual;
        first = false;
      }
    }
    for (std::size_t v = sink; v != source; v = parent[v].first) {
      Arc& arc = adj[parent[v].first][parent[v].second];
      arc.residual -= bottleneck;
      adj[arc.to][arc.reverse].residual += bottleneck;
    }
    result.value += bottleneck;
  }
}

Rational contracted_min_cut(const WeightedGraph& g, std::uint64_t side_mask) {
  const std::size_t k = g.terminal_count();
  if (k > 64) throw std::invalid_argument("at most 64 terminals supported");
  const std::uint64_t full = k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  side_mask &= full;
  if (side_mask == 0 || side_mask == full) throw std::invalid_argument("terminal cut side must be a proper nonempty subset");

  // Vertex 0 is the contracted source side, 1 the sink side.
  std::vector<std::size_t> image(g.vertex_count());
  std::size_t next = 2;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (auto pos = g.terminal_position(v)) {
      image[v] = ((side_mask >> *pos) & 1U) ? 0 : 1;
    } else {
      image[v] = next++;
    }
  }
  std::vector<Edge> contracted;
  for (const Edge& e : g.edges()) {
    if (image[e.u] != image[e.v]) contracted.push_back({image[e.u], image[e.v], e.weight});
  }
  return max_flow(next, contracted, 0, 1).value;
}

}  // namespace vsparse
