#pragma once

#include <cstddef>
#include <vector>

#include "vsparse/lp.hpp"
#include "vsparse/pairs.hpp"

namespace vsparse::detail {

// Triangle row d(x,y) - d(x,z) - d(z,y) <= 0 on m points, with pair indices.
struct TriangleRow {
  std::size_t x, y, z;
  std::size_t long_side, left, right;
};

inline std::vector<TriangleRow> triangle_rows(std::size_t m) {
  std::vector<TriangleRow> rows;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        const std::size_t tri[3] = {a, b, c};
        for (int apex = 0; apex < 3; ++apex) {
          const std::size_t z = tri[apex];
          const std::size_t x = tri[(apex + 1) % 3];
          const std::size_t y = tri[(apex + 2) % 3];
          rows.push_back({x, y, z, pair_index(x, y, m), pair_index(x, z, m), pair_index(z, y, m)});
        }
      }
    }
  }
  return rows;
}

// Adds the triangle rows of the metric cone on m points; variables 0..pairs-1
// are the pair distances.
inline void add_metric_cone(lp::LinearProgram& program, std::size_t m) {
  for (const TriangleRow& t : triangle_rows(m)) {
    program.add_constraint({{{t.long_side, 1}, {t.left, -1}, {t.right, -1}}, lp::Relation::kLessEqual, 0});
  }
}

// Metrics on m points normalized to total distance 1, with a zero objective.
inline lp::LinearProgram normalized_metric_polytope(std::size_t m) {
  lp::LinearProgram program(lp::Sense::kMaximize, std::vector<Rational>(pair_count(m)));
  add_metric_cone(program, m);
  lp::Constraint total{.relation = lp::Relation::kEqual, .rhs = 1};
  for (std::size_t e = 0; e < pair_count(m); ++e) total.terms.push_back({e, 1});
  program.add_constraint(std::move(total));
  return program;
}

}  // namespace vsparse::detail
