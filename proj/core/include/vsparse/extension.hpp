#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "vsparse/graph.hpp"
#include "vsparse/metric.hpp"
#include "vsparse/rational.hpp"

namespace vsparse {

// Cheapest metric on all vertices that agrees with d_Y on the terminals.
struct ExtensionResult {
  Rational value;
  Metric witness;  // on all vertices; restricts to d_Y
};

// Solves minext(d_Y, alpha) repeatedly for one graph. Terminal distances are
// constants of the LP, so successive queries only change right-hand sides and
// re-optimize from the previous basis. Not safe for concurrent use.
class MinExtensionSolver {
 public:
  explicit MinExtensionSolver(WeightedGraph g);
  ~MinExtensionSolver();
  MinExtensionSolver(MinExtensionSolver&&) noexcept;
  MinExtensionSolver& operator=(MinExtensionSolver&&) noexcept;

  const WeightedGraph& graph() const;

  // d_terminals is indexed by terminal position. Throws std::invalid_argument
  // on a size mismatch.
  ExtensionResult solve(const Metric& d_terminals);
  Rational value(const Metric& d_terminals) { return solve(d_terminals).value; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ExtensionResult min_extension(const WeightedGraph& g, const Metric& d_terminals);

// Minimum cut separating the terminals whose positions are set in `side_mask`
// from the other terminals. Computed both as minext(delta_S) and as a max flow
// on the contracted graph; throws std::logic_error if the two disagree and
// std::invalid_argument if the side is empty or contains every terminal.
Rational terminal_min_cut(const WeightedGraph& g, std::uint64_t side_mask);
Rational terminal_min_cut(MinExtensionSolver& solver, std::uint64_t side_mask);

struct ZeroExtension {
  std::vector<std::size_t> assignment;  // vertex -> terminal vertex; fixes terminals
  Rational cost;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultZeroExtensionBudget = 10'000'000;

// Exhaustive search over all k^(n-k) maps. Among minimum-cost maps, returns the
// lexicographically smallest (vertex order, terminal positions). Throws
// BudgetExceeded when k^(n-k) exceeds `budget`.
ZeroExtension best_zero_extension(const WeightedGraph& g, const Metric& d_terminals,
                                  std::uint64_t budget = kDefaultZeroExtensionBudget);

// Number of 0-extensions, saturating at UINT64_MAX.
std::uint64_t zero_extension_count(const WeightedGraph& g);

// Calls visit(assignment) for every 0-extension in lexicographic order.
// Throws BudgetExceeded when the count exceeds `budget`.
void for_each_zero_extension(const WeightedGraph& g, std::uint64_t budget,
                             const std::function<void(const std::vector<std::size_t>&)>& visit);

}  // namespace vsparse
