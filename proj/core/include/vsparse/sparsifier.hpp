#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vsparse/metric.hpp"
#include "vsparse/rational.hpp"

namespace vsparse {

// Nonnegative weights beta_pq on unordered terminal pairs, indexed by terminal
// position (pair_index(p, q, k)). Read as the graph H = (terminals, beta) or as
// the linear functional beta(d_Y) = sum beta_pq d_Y(p, q).
class Sparsifier {
 public:
  Sparsifier() = default;
  // Throws std::invalid_argument on a negative coefficient or wrong length.
  Sparsifier(std::size_t k, std::vector<Rational> pair_weights);

  std::size_t terminal_count() const { return k_; }
  const Rational& weight(std::size_t p, std::size_t q) const;
  std::span<const Rational> pair_weights() const { return beta_; }

  // beta(d) for a metric on the k terminals.
  Rational evaluate(const Metric& d_terminals) const;

  bool operator==(const Sparsifier&) const = default;

 private:
  std::size_t k_ = 0;
  std::vector<Rational> beta_;
};

}  // namespace vsparse
