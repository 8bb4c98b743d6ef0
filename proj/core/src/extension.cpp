#include "vsparse/extension.hpp"

#include <limits>
#include <optional>

#include "vsparse/lp.hpp"
#include "vsparse/maxflow.hpp"
#include "vsparse/pairs.hpp"

namespace vsparse {

namespace {

// A vertex pair is either an LP variable or pinned to a terminal distance.
struct PairSlot {
  std::optional<std::size_t> var;
  std::size_t terminal_pair = 0;  // pair index over terminal positions, when pinned
};

}  // namespace

struct MinExtensionSolver::Impl {
  WeightedGraph g;
  std::vector<PairSlot> slots;
  std::size_t free_count = 0;
  // Per LP row, the terminal pairs it references with their coefficients; the
  // row's right-hand side is minus their sum weighted by d_Y.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> pinned_terms;
  std::optional<lp::Simplex> simplex;
  std::vector<Rational> current_rhs;

  explicit Impl(WeightedGraph graph) : g(std::move(graph)) {
    const std::size_t n = g.vertex_count();
    const std::size_t k = g.terminal_count();
    slots.resize(pair_count(n));
    for (std::size_t idx = 0; idx < slots.size(); ++idx) {
      auto [i, j] = pair_at(idx, n);
      auto pi = g.terminal_position(i);
      auto pj = g.terminal_position(j);
      if (pi && pj) {
        slots[idx].terminal_pair = pair_index(*pi, *pj, k);
      } else {
        slots[idx].var = free_count++;
      }
    }
    if (free_count == 0) return;

    std::vector<Rational> objective(free_count);
    for (std::size_t idx = 0; idx < slots.size(); ++idx) {
      if (slots[idx].var) objective[*slots[idx].var] = g.pair_weights()[idx];
    }
    lp::LinearProgram program(lp::Sense::kMinimize, std::move(objective));
    // d(x,y) - d(x,z) - d(z,y) <= 0 for every triple and choice of long side.
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
          const std::size_t tri[3] = {a, b, c};
          for (int apex = 0; apex < 3; ++apex) {
            const std::size_t z = tri[apex];
            const std::size_t x = tri[(apex + 1) % 3];
            const std::size_t y = tri[(apex + 2) % 3];
            const std::pair<std::size_t, int> parts[3] = {
                {pair_index(x, y, n), 1}, {pair_index(x, z, n), -1}, {pair_index(z, y, n), -1}};
            lp::Constraint row{.relation = lp::Relation::kLessEqual};
            std::vector<std::pair<std::size_t, Rational>> pinned;
            for (const auto& [idx, coeff] : parts) {
              if (slots[idx].var) {
                row.terms.push_back({*slots[idx].var, coeff});
              } else {
                pinned.emplace_back(slots[idx].terminal_pair, coeff);
              }
            }
            if (row.terms.empty()) continue;
            program.add_constraint(std::move(row));
            pinned_terms.push_back(std::move(pinned));
          }
        }
      }
    }
    current_rhs.assign(pinned_terms.size(), 0);
    simplex.emplace(std::move(program));
  }

  ExtensionResult solve(const Metric& d) {
    const std::size_t n = g.vertex_count();
    const std::size_t k = g.terminal_count();
    if (d.size() != k) throw std::invalid_argument("terminal metric size does not match terminal count");
    const auto dy = d.pair_values();

    std::vector<Rational> values(pair_count(n));
    Rational value;
    for (std::size_t idx = 0; idx < slots.size(); ++idx) {
      if (slots[idx].var) continue;
      values[idx] = dy[slots[idx].terminal_pair];
      value += g.pair_weights()[idx] * values[idx];
    }
    if (simplex) {
      for (std::size_t r = 0; r < pinned_terms.size(); ++r) {
        Rational rhs;
        for (const auto& [tp, coeff] : pinned_terms[r]) rhs -= coeff * dy[tp];
        if (rhs != current_rhs[r]) {
          simplex->set_rhs(r, rhs);
          current_rhs[r] = std::move(rhs);
        }
      }
      lp::LpOutcome out = simplex->solve();
      if (out.status != lp::Status::kOptimal) {
        throw std::logic_error("minimum extension LP is " + lp::to_string(out.status));
      }
      for (std::size_t idx = 0; idx < slots.size(); ++idx) {
        if (slots[idx].var) values[idx] = out.x[*slots[idx].var];
      }
      value += out.objective;
    }
    return {std::move(value), Metric::from_pairs(n, std::move(values))};
  }
};

MinExtensionSolver::MinExtensionSolver(WeightedGraph g) : impl_(std::make_unique<Impl>(std::move(g))) {}
MinExtensionSolver::~MinExtensionSolver() = default;
MinExtensionSolver::MinExtensionSolver(MinExtensionSolver&&) noexcept = default;
MinExtensionSolver& MinExtensionSolver::operator=(MinExtensionSolver&&) noexcept = default;

const WeightedGraph& MinExtensionSolver::graph() const { return impl_->g; }

ExtensionResult MinExtensionSolver::solve(const Metric& d_terminals) { return impl_->solve(d_terminals); }

ExtensionResult min_extension(const WeightedGraph& g, const Metric& d_terminals) {
  MinExtensionSolver solver(g);
  return solver.solve(d_terminals);
}

Rational terminal_min_cut(MinExtensionSolver& solver, std::uint64_t side_mask) {
  const WeightedGraph& g = solver.graph();
  // Validates the side before either computation.
  Rational by_flow = contracted_min_cut(g, side_mask);
  Rational by_lp = solver.value(cut_metric(side_mask, g.terminal_count()));
  if (by_flow != by_lp) {
    throw std::logic_error("terminal min cut mismatch: LP " + to_string(by_lp) + " vs max flow " + to_string(by_flow));
  }
  return by_lp;
}

Rational terminal_min_cut(const WeightedGraph& g, std::uint64_t side_mask) {
  MinExtensionSolver solver(g);
  return terminal_min_cut(solver, side_mask);
}

std::uint64_t zero_extension_count(const WeightedGraph& g) {
  const std::uint64_t k = g.terminal_count();
  const std::size_t free = g.vertex_count() - g.terminal_count();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    count *= k;
  }
  return count;
}

void for_each_zero_extension(const WeightedGraph& g, std::uint64_t budget,
                             const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const std::uint64_t count = zero_extension_count(g);
  if (count > budget) {
    throw BudgetExceeded("0-extension enumeration needs " +
                         (count == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                             : std::to_string(count)) +
                         " maps, budget is " + std::to_string(budget));
  }
  const std::size_t n = g.vertex_count();
  const std::size_t k = g.terminal_count();
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.is_terminal(v)) free.push_back(v);
  }
  std::vector<std::size_t> digits(free.size(), 0);
  std::vector<std::size_t> assignment(n);
  for (std::size_t v = 0; v < n; ++v) assignment[v] = g.is_terminal(v) ? v : g.terminal(0);
  for (;;) {
    visit(assignment);
    // Odometer with the first free vertex as the most significant digit.
    std::size_t pos = free.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < k) {
        assignment[free[pos]] = g.terminal(digits[pos]);
        break;
      }
      digits[pos] = 0;
      assignment[free[pos]] = g.terminal(0);
      if (pos == 0) return;
    }
    if (free.empty()) return;
  }
}

ZeroExtension best_zero_extension(const WeightedGraph& g, const Metric& d_terminals, std::uint64_t budget) {
  const std::size_t k = g.terminal_count();
  if (d_terminals.size() != k) throw std::invalid_argument("terminal metric size does not match terminal count");
  const auto edges = g.edges();
  ZeroExtension best;
  bool have = false;
  Rational cost;
  for_each_zero_extension(g, budget, [&](const std::vector<std::size_t>& f) {
    cost = 0;
    for (const Edge& e : edges) {
      const std::size_t a = *g.terminal_position(f[e.u]);
      const std::size_t b = *g.terminal_position(f[e.v]);
      if (a != b) cost += e.weight * d_terminals(a, b);
    }
    if (!have || cost < best.cost) {
      best.assignment = f;
      best.cost = cost;
      have = true;
    }
  });
  return best;
}

}  // namespace vsparse
