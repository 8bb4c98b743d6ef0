#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vsparse/rational.hpp"

namespace vsparse::lp {

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  std::size_t var = 0;
  Rational coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct Bounds {
  bool nonnegative = true;  // lower bound 0, otherwise -infinity
  std::optional<Rational> upper;
};

// min/max c.x subject to rows and per-variable bounds. Variables default to
// [0, +inf).
class LinearProgram {
 public:
  // Throws std::invalid_argument when the objective is empty.
  LinearProgram(Sense sense, std::vector<Rational> objective);

  Sense sense() const { return sense_; }
  std::size_t variable_count() const { return objective_.size(); }
  std::size_t constraint_count() const { return constraints_.size(); }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Bounds>& bounds() const { return bounds_; }

  // Duplicate terms for one variable are merged and zero terms dropped.
  // Throws std::invalid_argument on an out-of-range variable.
  std::size_t add_constraint(Constraint row);
  void set_free(std::size_t var);
  void set_upper(std::size_t var, Rational upper);
  void set_objective(std::vector<Rational> objective);
  void set_rhs(std::size_t row, Rational rhs);

 private:
  Sense sense_;
  std::vector<Rational> objective_;
  std::vector<Constraint> constraints_;
  std::vector<Bounds> bounds_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string to_string(Status status);

// Dual convention, for both senses: with reduced costs
//   r_j = c_j - sum_i y_i a_ij - w_j,
// optimality means c.x = sum_i y_i b_i + sum_j w_j u_j. For minimization,
// y_i <= 0 on <= rows, y_i >= 0 on >= rows, w_j <= 0 and r_j >= 0 (r_j = 0
// for free variables); maximization flips every sign condition.
struct LpOutcome {
  Status status = Status::kInfeasible;
  std::vector<Rational> x;
  Rational objective;
  std::vector<Rational> row_duals;
  std::vector<Rational> upper_duals;  // zero for variables without an upper bound
  std::vector<Rational> ray;          // set when unbounded: feasible improving direction
  std::size_t pivots = 0;
};

// Exact simplex that keeps its tableau between solves. After an optimal
// solve, added rows and right-hand-side changes re-optimize with the dual
// simplex, objective changes with the primal simplex. Pivoting uses Bland's
// smallest-index rule throughout, so results are deterministic.
class Simplex {
 public:
  explicit Simplex(LinearProgram program);
  ~Simplex();
  Simplex(Simplex&&) noexcept;
  Simplex& operator=(Simplex&&) noexcept;

  const LinearProgram& program() const;

  LpOutcome solve();

  std::size_t add_constraint(Constraint row);
  void set_rhs(std::size_t row, Rational rhs);
  void set_objective(std::vector<Rational> objective);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot solve.
LpOutcome solve(const LinearProgram& program);

// Verifies an outcome independently of the pivoting that produced it.
// Optimal: primal feasibility, dual sign conditions and equal objectives.
// Unbounded: the ray is a recession direction that strictly improves.
// Returns a description of the first failed check, or nullopt.
std::optional<std::string> audit(const LinearProgram& program, const LpOutcome& outcome);

// Writes the program in CPLEX LP text format for cross-checking with external
// solvers. Each row is scaled by the lcm of its denominators so coefficients
// are integers; the objective scale factor is noted in a comment.
void write_lp_format(std::ostream& out, const LinearProgram& program);

}  // namespace vsparse::lp
