#include "vsparse/cutting_plane.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace vsparse::lp {

namespace {

std::string row_key(const Constraint& row) {
  std::string key = std::to_string(static_cast<int>(row.relation)) + "|" + vsparse::to_string(row.rhs);
  for (const Term& t : row.terms) {
    if (is_zero(t.coeff)) continue;
    key += "|" + std::to_string(t.var) + ":" + vsparse::to_string(t.coeff);
  }
  return key;
}

Constraint canonical(Constraint row) {
  std::sort(row.terms.begin(), row.terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (Term& t : row.terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return is_zero(t.coeff); });
  row.terms = std::move(merged);
  return row;
}

}  // namespace

bool violates(const Constraint& row, std::span<const Rational> x) {
  Rational activity;
  for (const Term& t : row.terms) activity += t.coeff * x[t.var];
  switch (row.relation) {
    case Relation::kLessEqual:
      return activity > row.rhs;
    case Relation::kGreaterEqual:
      return activity < row.rhs;
    case Relation::kEqual:
      return activity != row.rhs;
  }
  return false;
}

CuttingPlaneResult cutting_plane(LinearProgram master, std::span<const SeparationOracle> oracles,
                                 CuttingPlaneLimits limits) {
  std::set<std::string> present;
  for (const Constraint& c : master.constraints()) present.insert(row_key(canonical(c)));

  Simplex simplex(std::move(master));
  CuttingPlaneResult result{.program = simplex.program()};
  result.cuts_per_oracle.assign(oracles.size(), 0);

  for (;;) {
    result.master = simplex.solve();
    ++result.iterations;
    if (result.master.status == Status::kInfeasible) {
      result.status = CuttingPlaneStatus::kMasterInfeasible;
      break;
    }
    if (result.master.status == Status::kUnbounded) {
      result.status = CuttingPlaneStatus::kMasterUnbounded;
      break;
    }
    std::vector<Constraint> cuts;
    std::size_t source = 0;
    for (; source < oracles.size(); ++source) {
      cuts = oracles[source](result.master.x);
      if (!cuts.empty()) break;
    }
    if (cuts.empty()) {
      result.status = CuttingPlaneStatus::kConverged;
      result.converged = true;
      break;
    }
    if (result.iterations >= limits.max_iterations) {
      result.status = CuttingPlaneStatus::kIterationLimit;
      break;
    }
    for (Constraint& cut : cuts) {
      cut = canonical(std::move(cut));
      if (!violates(cut, result.master.x)) {
        throw std::logic_error("oracle " + std::to_string(source) + " returned a row the candidate satisfies");
      }
      if (!present.insert(row_key(cut)).second) {
        throw std::logic_error("oracle " + std::to_string(source) +
                               " returned a row already in the master that is still violated");
      }
      const std::size_t row = simplex.add_constraint(std::move(cut));
      result.cuts.push_back({source, result.iterations, row});
      ++result.cuts_per_oracle[source];
    }
  }
  result.program = simplex.program();
  return result;
}

}  // namespace vsparse::lp
