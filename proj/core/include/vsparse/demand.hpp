#pragma once

#include <cstddef>
#include <vector>

#include "vsparse/rational.hpp"

namespace vsparse {

struct Demand {
  std::size_t source = 0;
  std::size_t sink = 0;
  Rational amount;

  bool operator==(const Demand&) const = default;
};

// Flow demands (s_r, t_r, dem_r). Endpoints are vertex indices.
class DemandSet {
 public:
  DemandSet() = default;
  // Throws std::invalid_argument on s == t or a negative amount.
  explicit DemandSet(std::vector<Demand> demands);

  const std::vector<Demand>& demands() const { return demands_; }
  bool empty() const { return demands_.empty(); }
  bool has_positive() const;
  DemandSet scaled(const Rational& factor) const;

  bool operator==(const DemandSet&) const = default;

 private:
  std::vector<Demand> demands_;
};

}  // namespace vsparse
