#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vsparse/rational.hpp"

namespace vsparse {

class WeightedGraph;

// Unvalidated square distance table, as read from input.
using DistanceMatrix = std::vector<std::vector<Rational>>;

struct MetricViolation {
  enum class Kind { kNotSquare, kNonzeroDiagonal, kNegative, kAsymmetric, kTriangle };
  Kind kind;
  // Offending indices. For kTriangle, d(i,j) + d(j,l) < d(i,l).
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t l = 0;

  std::string describe() const;
};

class MetricError : public std::invalid_argument {
 public:
  explicit MetricError(const MetricViolation& v) : std::invalid_argument(v.describe()), violation_(v) {}
  const MetricViolation& violation() const { return violation_; }

 private:
  MetricViolation violation_;
};

// Semimetric on {0..m-1}: nonnegative, symmetric, zero diagonal, triangle
// inequality. Distinct points may be at distance zero.
class Metric {
 public:
  Metric() = default;

  static Metric zero(std::size_t m);
  // Validates; throws MetricError.
  static Metric from_pairs(std::size_t m, std::vector<Rational> pair_values);
  static Metric from_matrix(const DistanceMatrix& table);

  std::size_t size() const { return m_; }
  Rational operator()(std::size_t i, std::size_t j) const;
  // Values indexed by pair_index(i, j, size()).
  std::span<const Rational> pair_values() const { return values_; }
  DistanceMatrix to_matrix() const;

  bool operator==(const Metric&) const = default;

 private:
  Metric(std::size_t m, std::vector<Rational> values) : m_(m), values_(std::move(values)) {}

  std::size_t m_ = 0;
  std::vector<Rational> values_;
};

// First violated condition of a pair-indexed table, if any.
std::variant<std::monostate, MetricViolation> find_violation(std::size_t m, std::span<const Rational> pair_values);

// Returns the metric, or the first violated condition in the order: shape,
// diagonal, negativity, symmetry, triangle (lexicographic triples).
std::variant<Metric, MetricViolation> validate_metric(const DistanceMatrix& table);

// Cut semimetric delta_S over a ground set of size m <= 64.
struct CutMetric {
  std::uint64_t side = 0;
  std::size_t ground = 0;

  bool separates(std::size_t p, std::size_t q) const { return ((side >> p) & 1U) != ((side >> q) & 1U); }
  Metric to_metric() const;
};

Metric cut_metric(std::uint64_t side, std::size_t m);

// Restriction of d onto the listed points, in the listed order.
Metric restrict(const Metric& d, std::span<const std::size_t> points);

// Sum over unordered pairs {i,j} of alpha_ij * d(i,j).
Rational alpha_cost(const WeightedGraph& g, const Metric& d);

// Nonnegative combinations stay metrics.
Metric operator+(const Metric& a, const Metric& b);
Metric scaled(const Metric& d, const Rational& factor);

// Shortest-path closure of a nonnegative symmetric pair table.
Metric shortest_path_closure(std::size_t m, std::span<const Rational> pair_lengths);

}  // namespace vsparse
