#include "vsparse/metric.hpp"

#include <sstream>

#include "vsparse/graph.hpp"
#include "vsparse/pairs.hpp"

namespace vsparse {

std::string MetricViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kNotSquare:
      out << "distance table is not square (row " << i << ")";
      break;
    case Kind::kNonzeroDiagonal:
      out << "nonzero diagonal entry at " << i;
      break;
    case Kind::kNegative:
      out << "negative distance d(" << i << "," << j << ")";
      break;
    case Kind::kAsymmetric:
      out << "asymmetric distances d(" << i << "," << j << ") != d(" << j << "," << i << ")";
      break;
    case Kind::kTriangle:
      out << "triangle violation (" << i << "," << j << "," << l << "): d(" << i << "," << j << ")+d(" << j << ","
          << l << ") < d(" << i << "," << l << ")";
      break;
  }
  return out.str();
}

Metric Metric::zero(std::size_t m) { return Metric(m, std::vector<Rational>(pair_count(m))); }

Metric Metric::from_pairs(std::size_t m, std::vector<Rational> pair_values) {
  if (pair_values.size() != pair_count(m)) {
    throw std::invalid_argument("pair table has wrong length for " + std::to_string(m) + " points");
  }
  if (auto v = find_violation(m, pair_values); std::holds_alternative<MetricViolation>(v)) {
    throw MetricError(std::get<MetricViolation>(v));
  }
  return Metric(m, std::move(pair_values));
}

Metric Metric::from_matrix(const DistanceMatrix& table) {
  auto result = validate_metric(table);
  if (auto* violation = std::get_if<MetricViolation>(&result)) throw MetricError(*violation);
  return std::get<Metric>(std::move(result));
}

Rational Metric::operator()(std::size_t i, std::size_t j) const {
  if (i >= m_ || j >= m_) throw std::out_of_range("metric index out of range");
  if (i == j) return 0;
  return values_[pair_index(i, j, m_)];
}

DistanceMatrix Metric::to_matrix() const {
  DistanceMatrix table(m_, std::vector<Rational>(m_));
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      if (i != j) table[i][j] = values_[pair_index(i, j, m_)];
    }
  }
  return table;
}

std::variant<std::monostate, MetricViolation> find_violation(std::size_t m, std::span<const Rational> d) {
  using Kind = MetricViolation::Kind;
  for (std::size_t idx = 0; idx < d.size(); ++idx) {
    if (is_negative(d[idx])) {
      auto [i, j] = pair_at(idx, m);
      return MetricViolation{Kind::kNegative, i, j, 0};
    }
  }
  auto at = [&](std::size_t i, std::size_t j) -> const Rational& { return d[pair_index(i, j, m)]; };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      for (std::size_t l = 0; l < m; ++l) {
        if (l == i || l == j) continue;
        if (at(i, j) + at(j, l) < at(i, l)) return MetricViolation{Kind::kTriangle, i, j, l};
      }
    }
  }
  return std::monostate{};
}

std::variant<Metric, MetricViolation> validate_metric(const DistanceMatrix& table) {
  using Kind = MetricViolation::Kind;
  const std::size_t m = table.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (table[i].size() != m) return MetricViolation{Kind::kNotSquare, i, 0, 0};
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_zero(table[i][i])) return MetricViolation{Kind::kNonzeroDiagonal, i, i, 0};
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (is_negative(table[i][j])) return MetricViolation{Kind::kNegative, i, j, 0};
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (table[i][j] != table[j][i]) return MetricViolation{Kind::kAsymmetric, i, j, 0};
    }
  }
  std::vector<Rational> values(pair_count(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) values[pair_index(i, j, m)] = table[i][j];
  }
  if (auto v = find_violation(m, values); std::holds_alternative<MetricViolation>(v)) {
    return std::get<MetricViolation>(v);
  }
  return Metric::from_pairs(m, std::move(values));
}

Metric CutMetric::to_metric() const { return cut_metric(side, ground); }

Metric cut_metric(std::uint64_t side, std::size_t m) {
  if (m > 64) throw std::invalid_argument("cut metrics support at most 64 points");
  std::vector<Rational> values(pair_count(m));
  const CutMetric cut{side, m};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (cut.separates(i, j)) values[pair_index(i, j, m)] = 1;
    }
  }
  return Metric::from_pairs(m, std::move(values));
}

Metric restrict(const Metric& d, std::span<const std::size_t> points) {
  const std::size_t k = points.size();
  for (std::size_t p : points) {
    if (p >= d.size()) throw std::out_of_range("restriction index " + std::to_string(p) + " out of range");
  }
  std::vector<Rational> values(pair_count(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) values[pair_index(a, b, k)] = d(points[a], points[b]);
  }
  return Metric::from_pairs(k, std::move(values));
}

Rational alpha_cost(const WeightedGraph& g, const Metric& d) {
  if (d.size() != g.vertex_count()) throw std::invalid_argument("metric size does not match vertex count");
  Rational total;
  const auto weights = g.pair_weights();
  const auto values = d.pair_values();
  for (std::size_t idx = 0; idx < weights.size(); ++idx) {
    if (!is_zero(weights[idx])) total += weights[idx] * values[idx];
  }
  return total;
}

Metric operator+(const Metric& a, const Metric& b) {
  if (a.size() != b.size()) throw std::invalid_argument("metric sizes differ");
  std::vector<Rational> values(a.pair_values().begin(), a.pair_values().end());
  for (std::size_t idx = 0; idx < values.size(); ++idx) values[idx] += b.pair_values()[idx];
  return Metric::from_pairs(a.size(), std::move(values));
}

Metric scaled(const Metric& d, const Rational& factor) {
  if (is_negative(factor)) throw std::invalid_argument("metric scale must be nonnegative");
  std::vector<Rational> values(d.pair_values().begin(), d.pair_values().end());
  for (auto& v : values) v *= factor;
  return Metric::from_pairs(d.size(), std::move(values));
}

Metric shortest_path_closure(std::size_t m, std::span<const Rational> pair_lengths) {
  if (pair_lengths.size() != pair_count(m)) throw std::invalid_argument("pair table has wrong length");
  DistanceMatrix dist(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Rational& w = pair_lengths[pair_index(i, j, m)];
      if (is_negative(w)) throw std::invalid_argument("negative pair length");
      dist[i][j] = dist[j][i] = w;
    }
  }
  for (std::size_t via = 0; via < m; ++via) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        Rational through = dist[i][via] + dist[via][j];
        if (through < dist[i][j]) dist[i][j] = through;
      }
    }
  }
  return Metric::from_matrix(dist);
}

}  // namespace vsparse
