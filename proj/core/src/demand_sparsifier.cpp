#include <stdexcept>

#include "vsparse/demand.hpp"
#include "vsparse/pairs.hpp"
#include "vsparse/sparsifier.hpp"

namespace vsparse {

DemandSet::DemandSet(std::vector<Demand> demands) : demands_(std::move(demands)) {
  for (const Demand& d : demands_) {
    if (d.source == d.sink) throw std::invalid_argument("demand endpoints must differ");
    if (is_negative(d.amount)) throw std::invalid_argument("demand amount must be nonnegative");
  }
}

bool DemandSet::has_positive() const {
  for (const Demand& d : demands_) {
    if (is_positive(d.amount)) return true;
  }
  return false;
}

DemandSet DemandSet::scaled(const Rational& factor) const {
  std::vector<Demand> out = demands_;
  for (Demand& d : out) d.amount *= factor;
  return DemandSet(std::move(out));
}

Sparsifier::Sparsifier(std::size_t k, std::vector<Rational> pair_weights) : k_(k), beta_(std::move(pair_weights)) {
  if (beta_.size() != pair_count(k_)) throw std::invalid_argument("sparsifier weight count does not match k");
  for (const Rational& b : beta_) {
    if (is_negative(b)) throw std::invalid_argument("sparsifier weights must be nonnegative");
  }
}

const Rational& Sparsifier::weight(std::size_t p, std::size_t q) const {
  if (p >= k_ || q >= k_ || p == q) throw std::out_of_range("invalid terminal pair");
  return beta_[pair_index(p, q, k_)];
}

Rational Sparsifier::evaluate(const Metric& d) const {
  if (d.size() != k_) throw std::invalid_argument("metric is not on the sparsifier's terminals");
  Rational total;
  for (std::size_t idx = 0; idx < beta_.size(); ++idx) total += beta_[idx] * d.pair_values()[idx];
  return total;
}

}  // namespace vsparse
