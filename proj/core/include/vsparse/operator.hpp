#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsparse/cutting_plane.hpp"
#include "vsparse/extension.hpp"
#include "vsparse/graph.hpp"
#include "vsparse/metric.hpp"
#include "vsparse/sparsifier.hpp"

namespace vsparse {

// Coefficients phi[e][t] of a linear map from terminal metrics to vertex
// metrics: phi(d_Y)(i,j) = sum_t phi[{i,j}][t] * d_Y(t), where e is a vertex
// pair (pair_index over n) and t a terminal pair (pair_index over terminal
// positions). Rows for terminal pairs are the identity.
using OperatorTable = std::vector<std::vector<Rational>>;

class ExtensionOperator {
 public:
  ExtensionOperator() = default;

  // Validates shape, the identity terminal rows and, unless
  // `allow_negative`, nonnegativity. Throws std::invalid_argument.
  ExtensionOperator(std::size_t n, std::vector<std::size_t> terminals, OperatorTable table, Rational distortion,
                    bool allow_negative = false);

  // Identity rows on terminal pairs, zero elsewhere.
  static OperatorTable identity_table(std::size_t n, std::span<const std::size_t> terminals);

  std::size_t vertex_count() const { return n_; }
  std::size_t terminal_count() const { return terminals_.size(); }
  std::span<const std::size_t> terminals() const { return terminals_; }
  const OperatorTable& table() const { return table_; }
  const Rational& distortion() const { return distortion_; }

  // Coefficient of d_Y(p,q) in phi(d_Y)(i,j); all arguments are vertex indices.
  const Rational& coefficient(std::size_t i, std::size_t j, std::size_t p, std::size_t q) const;

  bool operator==(const ExtensionOperator&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> terminals_;
  OperatorTable table_;
  Rational distortion_;
};

// Raw contraction phi(d_Y) as pair values over n vertices.
std::vector<Rational> apply_values(const OperatorTable& table, std::size_t n, const Metric& d_terminals);

// phi(d_Y). Throws std::invalid_argument on a dimension mismatch and
// MetricError when phi is not a metric extension operator.
Metric apply(const ExtensionOperator& phi, const Metric& d_terminals);

// Operator induced by a 0-extension f: phi_f(d_Y)(i,j) = d_Y(f(i), f(j)).
// `assignment` maps each vertex to a terminal vertex. distortion() is 0 (not
// evaluated).
ExtensionOperator zero_extension_operator(const WeightedGraph& g, std::span<const std::size_t> assignment);

// beta_pq = sum_{i<j} alpha_ij phi[{i,j}][{p,q}].
Sparsifier operator_to_sparsifier(const ExtensionOperator& phi, const WeightedGraph& g);

// A linear constraint on (phi, Q): sum coeff * phi[e][t] - q_coeff * Q <= 0.
struct OperatorCut {
  struct Entry {
    std::size_t vertex_pair;
    std::size_t terminal_pair;
    Rational coeff;
  };
  std::vector<Entry> entries;
  Rational q_coeff;

  // Left-hand side at (table, q).
  Rational evaluate(const OperatorTable& table, const Rational& q) const;
};

struct MembershipViolation {
  // phi(d)(long_a, long_b) > phi(d)(long_a, apex) + phi(d)(apex, long_b) at
  // d = witness; for a nonnegativity row, apex == long_a == long_b is unused
  // and the violated row is phi(d)(long_a, long_b) >= 0.
  std::size_t long_a = 0;
  std::size_t long_b = 0;
  std::size_t apex = 0;
  bool nonnegativity_row = false;
  Metric witness;    // normalized: distances sum to 1
  Rational excess;   // violation amount at the witness
  OperatorCut cut;   // l(phi(witness)) <= 0
};

// Separation for the set of metric extension operators: for every triangle
// row of the vertex metric cone, maximizes its violation over terminal
// metrics normalized to total distance 1. Not safe for concurrent use.
class MembershipOracle {
 public:
  MembershipOracle(std::size_t n, std::vector<std::size_t> terminals, bool check_nonnegativity = false);
  ~MembershipOracle();
  MembershipOracle(MembershipOracle&&) noexcept;
  MembershipOracle& operator=(MembershipOracle&&) noexcept;

  // Empty when `table` maps every terminal metric to a metric.
  std::vector<MembershipViolation> separate(const OperatorTable& table);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<MembershipViolation> membership_oracle(const ExtensionOperator& phi);

struct DistortionViolation {
  Metric vertex_metric;    // maximizer over normalized vertex metrics
  Metric terminal_metric;  // its restriction d_Y*
  Rational min_extension;  // c* = minext(d_Y*)
  Rational operator_cost;  // alpha(phi(d_Y*))
  OperatorCut cut;         // alpha(phi(d_Y*)) - c* Q <= 0
};

// Separation for alpha(phi(d_Y)) <= Q minext(d_Y) over all terminal metrics.
class DistortionOracle {
 public:
  explicit DistortionOracle(WeightedGraph g);
  ~DistortionOracle();
  DistortionOracle(DistortionOracle&&) noexcept;
  DistortionOracle& operator=(DistortionOracle&&) noexcept;

  std::optional<DistortionViolation> separate(const OperatorTable& table, const Rational& q);
  MinExtensionSolver& extension_solver();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<DistortionViolation> distortion_oracle(const ExtensionOperator& phi, const Rational& q,
                                                     const WeightedGraph& g);

struct OperatorSolveOptions {
  lp::CuttingPlaneLimits limits;
  // Seed the master with the distortion rows of every terminal cut metric.
  bool seed_cut_metrics = true;
  // Exploration only: drops phi >= 0 and checks nonnegativity rows instead.
  bool allow_negative = false;
};

enum class OperatorSolveStatus { kConverged, kIterationLimit, kMasterFailure };

struct WorstMetric {
  Metric terminal_metric;
  Rational min_extension;
  // Magnitude of the row's dual multiplier in the final master.
  Rational dual_weight;
};

struct OperatorSolveReport {
  OperatorSolveStatus status = OperatorSolveStatus::kConverged;
  bool converged = false;
  ExtensionOperator op;
  std::size_t master_iterations = 0;
  std::size_t seed_cuts = 0;
  std::size_t membership_cuts = 0;
  std::size_t distortion_cuts = 0;
  // Distortion rows binding at the returned solution:
  // alpha(phi(d)) == Q * minext(d).
  std::vector<WorstMetric> worst_metrics;
};

std::string to_string(OperatorSolveStatus status);

// Minimizes Q over operators phi subject to phi mapping terminal metrics to
// extensions and alpha(phi(d_Y)) <= Q minext(d_Y), by cutting planes with the
// membership oracle queried before the distortion oracle.
OperatorSolveReport find_optimal_operator(const WeightedGraph& g, const OperatorSolveOptions& options = {});

}  // namespace vsparse
