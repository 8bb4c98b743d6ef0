#include "vsparse/lp.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vsparse::lp {

namespace {

// Pivots per solve before we assume an anti-cycling bug.
constexpr std::size_t kPivotLimit = 5'000'000;

}  // namespace

LinearProgram::LinearProgram(Sense sense, std::vector<Rational> objective)
    : sense_(sense), objective_(std::move(objective)), bounds_(objective_.size()) {
  if (objective_.empty()) throw std::invalid_argument("linear program has no variables");
}

std::size_t LinearProgram::add_constraint(Constraint row) {
  std::vector<Term> merged;
  std::sort(row.terms.begin(), row.terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  for (Term& t : row.terms) {
    if (t.var >= objective_.size()) {
      throw std::invalid_argument("constraint references variable " + std::to_string(t.var) + " of " +
                                  std::to_string(objective_.size()));
    }
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return is_zero(t.coeff); });
  row.terms = std::move(merged);
  constraints_.push_back(std::move(row));
  return constraints_.size() - 1;
}

void LinearProgram::set_free(std::size_t var) { bounds_.at(var).nonnegative = false; }

void LinearProgram::set_upper(std::size_t var, Rational upper) { bounds_.at(var).upper = std::move(upper); }

void LinearProgram::set_objective(std::vector<Rational> objective) {
  if (objective.size() != objective_.size()) throw std::invalid_argument("objective dimension mismatch");
  objective_ = std::move(objective);
}

void LinearProgram::set_rhs(std::size_t row, Rational rhs) { constraints_.at(row).rhs = std::move(rhs); }

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

// Internal form: minimize c.x subject to A x <= b, x >= 0. Every internal row
// owns a slack column, so the slack columns of the tableau hold B^-1.
struct Simplex::Impl {
  struct RowOrigin {
    bool is_upper = false;
    std::size_t index = 0;  // user row, or variable for upper-bound rows
    int sign = 1;           // internal row = sign * user row
  };
  struct InternalRow {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    Rational rhs;
    RowOrigin origin;
  };

  LinearProgram program;
  std::vector<std::size_t> pos_col;
  std::vector<std::ptrdiff_t> neg_col;  // -1 when the variable is nonnegative
  std::size_t structural = 0;
  std::vector<InternalRow> rows;
  std::vector<Rational> cost;  // internal cost for structural columns

  bool built = false;
  bool rhs_dirty = false;
  bool cost_dirty = false;
  std::vector<std::vector<Rational>> tableau;
  std::vector<Rational> beta;     // basic variable values
  std::vector<Rational> reduced;  // reduced costs, width of tableau
  std::vector<std::size_t> basis;
  std::vector<std::ptrdiff_t> basic_row;  // per column, -1 when nonbasic
  std::size_t pivots = 0;
  Rational scratch;

  explicit Impl(LinearProgram lp) : program(std::move(lp)) {
    const std::size_t n = program.variable_count();
    pos_col.resize(n);
    neg_col.assign(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
      pos_col[j] = structural++;
      if (!program.bounds()[j].nonnegative) neg_col[j] = static_cast<std::ptrdiff_t>(structural++);
    }
    load_cost();
    for (std::size_t i = 0; i < program.constraint_count(); ++i) append_user_row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (const auto& ub = program.bounds()[j].upper) {
        InternalRow row;
        row.coeffs.emplace_back(pos_col[j], 1);
        if (neg_col[j] >= 0) row.coeffs.emplace_back(static_cast<std::size_t>(neg_col[j]), -1);
        row.rhs = *ub;
        row.origin = {true, j, 1};
        rows.push_back(std::move(row));
      }
    }
  }

  std::size_t width() const { return structural + rows.size(); }

  void load_cost() {
    cost.assign(structural, 0);
    const bool maximize = program.sense() == Sense::kMaximize;
    for (std::size_t j = 0; j < program.variable_count(); ++j) {
      Rational c = maximize ? Rational(-program.objective()[j]) : program.objective()[j];
      if (neg_col[j] >= 0) cost[static_cast<std::size_t>(neg_col[j])] = -c;
      cost[pos_col[j]] = std::move(c);
    }
  }

  InternalRow make_row(const Constraint& c, std::size_t index, int sign) const {
    InternalRow row;
    for (const Term& t : c.terms) {
      Rational a = sign > 0 ? t.coeff : Rational(-t.coeff);
      if (neg_col[t.var] >= 0) row.coeffs.emplace_back(static_cast<std::size_t>(neg_col[t.var]), -a);
      row.coeffs.emplace_back(pos_col[t.var], std::move(a));
    }
    row.rhs = sign > 0 ? c.rhs : Rational(-c.rhs);
    row.origin = {false, index, sign};
    return row;
  }

  // Returns the number of internal rows appended.
  std::size_t append_user_row(std::size_t index) {
    const Constraint& c = program.constraints()[index];
    std::size_t added = 0;
    if (c.relation != Relation::kGreaterEqual) {
      rows.push_back(make_row(c, index, 1));
      ++added;
    }
    if (c.relation != Relation::kLessEqual) {
      rows.push_back(make_row(c, index, -1));
      ++added;
    }
    return added;
  }

  void build() {
    const std::size_t m = rows.size();
    const std::size_t w = width();
    tableau.assign(m, std::vector<Rational>(w));
    beta.resize(m);
    basis.resize(m);
    basic_row.assign(w, -1);
    for (std::size_t r = 0; r < m; ++r) {
      for (const auto& [col, a] : rows[r].coeffs) tableau[r][col] = a;
      tableau[r][structural + r] = 1;
      beta[r] = rows[r].rhs;
      basis[r] = structural + r;
      basic_row[structural + r] = static_cast<std::ptrdiff_t>(r);
    }
    reduced.assign(w, 0);
    for (std::size_t j = 0; j < structural; ++j) reduced[j] = cost[j];
    built = true;
    rhs_dirty = false;
    cost_dirty = false;
  }

  // beta = B^-1 b, read off the slack columns.
  void recompute_beta() {
    const std::size_t m = rows.size();
    for (std::size_t r = 0; r < m; ++r) {
      Rational& v = beta[r];
      v = 0;
      const auto& row = tableau[r];
      for (std::size_t i = 0; i < m; ++i) {
        const Rational& binv = row[structural + i];
        if (is_zero(binv) || is_zero(rows[i].rhs)) continue;
        mpq_mul(scratch.get_mpq_t(), binv.get_mpq_t(), rows[i].rhs.get_mpq_t());
        mpq_add(v.get_mpq_t(), v.get_mpq_t(), scratch.get_mpq_t());
      }
    }
    rhs_dirty = false;
  }

  // d_j = c_j - c_B B^-1 A_j.
  void recompute_reduced(const std::vector<Rational>& column_cost) {
    const std::size_t w = width();
    reduced.assign(w, 0);
    for (std::size_t j = 0; j < structural; ++j) reduced[j] = column_cost[j];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::size_t b = basis[r];
      if (b >= structural || is_zero(column_cost[b])) continue;
      const Rational& cb = column_cost[b];
      const auto& row = tableau[r];
      for (std::size_t j = 0; j < w; ++j) {
        if (is_zero(row[j])) continue;
        mpq_mul(scratch.get_mpq_t(), cb.get_mpq_t(), row[j].get_mpq_t());
        mpq_sub(reduced[j].get_mpq_t(), reduced[j].get_mpq_t(), scratch.get_mpq_t());
      }
    }
    cost_dirty = false;
  }

  void pivot(std::size_t r, std::size_t s) {
    if (++pivots > kPivotLimit) throw std::logic_error("simplex pivot limit exceeded");
    auto& prow = tableau[r];
    const std::size_t w = width();
    Rational inv = 1 / prow[s];
    std::vector<std::size_t> nz;
    nz.reserve(w);
    for (std::size_t j = 0; j < w; ++j) {
      if (is_zero(prow[j])) continue;
      mpq_mul(prow[j].get_mpq_t(), prow[j].get_mpq_t(), inv.get_mpq_t());
      nz.push_back(j);
    }
    beta[r] *= inv;
    auto eliminate = [&](std::vector<Rational>& row, Rational* value) {
      if (is_zero(row[s])) return;
      Rational f = row[s];
      for (std::size_t j : nz) {
        mpq_mul(scratch.get_mpq_t(), f.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), scratch.get_mpq_t());
      }
      if (value != nullptr && !is_zero(beta[r])) {
        mpq_mul(scratch.get_mpq_t(), f.get_mpq_t(), beta[r].get_mpq_t());
        mpq_sub(value->get_mpq_t(), value->get_mpq_t(), scratch.get_mpq_t());
      }
    };
    for (std::size_t i = 0; i < tableau.size(); ++i) {
      if (i != r) eliminate(tableau[i], &beta[i]);
    }
    eliminate(reduced, nullptr);
    basic_row[basis[r]] = -1;
    basis[r] = s;
    basic_row[s] = static_cast<std::ptrdiff_t>(r);
  }

  enum class PrimalResult { kOptimal, kUnbounded };

  // Bland: entering = smallest index with negative reduced cost; leaving =
  // minimum ratio, ties to the smallest basic index.
  PrimalResult primal(std::size_t& unbounded_col) {
    for (;;) {
      std::size_t s = width();
      for (std::size_t j = 0; j < width(); ++j) {
        if (basic_row[j] < 0 && is_negative(reduced[j])) {
          s = j;
          break;
        }
      }
      if (s == width()) return PrimalResult::kOptimal;
      std::ptrdiff_t leave = -1;
      Rational best;
      for (std::size_t i = 0; i < tableau.size(); ++i) {
        const Rational& a = tableau[i][s];
        if (!is_positive(a)) continue;
        Rational ratio = beta[i] / a;
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[static_cast<std::size_t>(leave)])) {
          leave = static_cast<std::ptrdiff_t>(i);
          best = std::move(ratio);
        }
      }
      if (leave < 0) {
        unbounded_col = s;
        return PrimalResult::kUnbounded;
      }
      pivot(static_cast<std::size_t>(leave), s);
    }
  }

  // Dual simplex from a dual-feasible basis. Bland: leaving = infeasible row
  // with the smallest basic index; entering = minimum |d_j / a_rj|, ties to the
  // smallest column. Returns false when the primal is infeasible.
  bool dual() {
    for (;;) {
      std::ptrdiff_t r = -1;
      for (std::size_t i = 0; i < tableau.size(); ++i) {
        if (is_negative(beta[i]) && (r < 0 || basis[i] < basis[static_cast<std::size_t>(r)])) {
          r = static_cast<std::ptrdiff_t>(i);
        }
      }
      if (r < 0) return true;
      const auto& row = tableau[static_cast<std::size_t>(r)];
      std::size_t s = width();
      Rational best;
      for (std::size_t j = 0; j < width(); ++j) {
        if (basic_row[j] >= 0 || !is_negative(row[j])) continue;
        Rational ratio = reduced[j] / row[j];
        ratio = -ratio;
        if (s == width() || ratio < best) {
          s = j;
          best = std::move(ratio);
        }
      }
      if (s == width()) return false;
      pivot(static_cast<std::size_t>(r), s);
    }
  }

  bool primal_feasible() const {
    return std::none_of(beta.begin(), beta.end(), [](const Rational& v) { return is_negative(v); });
  }
  bool dual_feasible() const {
    for (std::size_t j = 0; j < width(); ++j) {
      if (basic_row[j] < 0 && is_negative(reduced[j])) return false;
    }
    return true;
  }

  std::vector<Rational> column_cost() const {
    std::vector<Rational> c(width());
    for (std::size_t j = 0; j < structural; ++j) c[j] = cost[j];
    return c;
  }

  LpOutcome run() {
    if (!built) build();
    if (rhs_dirty) recompute_beta();
    if (cost_dirty) recompute_reduced(column_cost());
    pivots = 0;
    LpOutcome out;
    if (!primal_feasible()) {
      const bool had_dual = dual_feasible();
      if (!had_dual) {
        // Phase one: zero costs make every basis dual feasible.
        reduced.assign(width(), 0);
      }
      if (!dual()) {
        if (!had_dual) cost_dirty = true;
        out.status = Status::kInfeasible;
        out.pivots = pivots;
        return out;
      }
      if (!had_dual) recompute_reduced(column_cost());
    }
    std::size_t ray_col = 0;
    if (primal(ray_col) == PrimalResult::kUnbounded) {
      out.status = Status::kUnbounded;
      std::vector<Rational> dir(structural);
      if (ray_col < structural) dir[ray_col] = 1;
      for (std::size_t i = 0; i < tableau.size(); ++i) {
        if (basis[i] < structural) dir[basis[i]] = -tableau[i][ray_col];
      }
      out.ray = to_user(dir);
      out.pivots = pivots;
      return out;
    }
    out.status = Status::kOptimal;
    std::vector<Rational> xs(structural);
    for (std::size_t i = 0; i < tableau.size(); ++i) {
      if (basis[i] < structural) xs[basis[i]] = beta[i];
    }
    out.x = to_user(xs);
    for (std::size_t j = 0; j < out.x.size(); ++j) out.objective += program.objective()[j] * out.x[j];
    const int sense_sign = program.sense() == Sense::kMaximize ? -1 : 1;
    out.row_duals.assign(program.constraint_count(), 0);
    out.upper_duals.assign(program.variable_count(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rational y = -reduced[structural + r];
      if (is_zero(y)) continue;
      const RowOrigin& o = rows[r].origin;
      if (sense_sign * o.sign < 0) y = -y;
      if (o.is_upper) {
        out.upper_duals[o.index] += y;
      } else {
        out.row_duals[o.index] += y;
      }
    }
    out.pivots = pivots;
    return out;
  }

  std::vector<Rational> to_user(const std::vector<Rational>& internal) const {
    std::vector<Rational> x(program.variable_count());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = internal[pos_col[j]];
      if (neg_col[j] >= 0) x[j] -= internal[static_cast<std::size_t>(neg_col[j])];
    }
    return x;
  }

  // Adds a row to a live tableau, expressed in the current basis.
  void insert_row(InternalRow row) {
    const std::size_t old_width = width();
    rows.push_back(std::move(row));
    const InternalRow& added = rows.back();
    for (auto& t : tableau) t.emplace_back();
    reduced.emplace_back();
    basic_row.push_back(-1);
    std::vector<Rational> dense(old_width + 1);
    for (const auto& [col, a] : added.coeffs) dense[col] = a;
    dense[old_width] = 1;
    Rational value = added.rhs;
    for (std::size_t i = 0; i < tableau.size(); ++i) {
      const std::size_t b = basis[i];
      if (is_zero(dense[b])) continue;
      Rational f = dense[b];
      const auto& trow = tableau[i];
      for (std::size_t j = 0; j < old_width; ++j) {
        if (is_zero(trow[j])) continue;
        mpq_mul(scratch.get_mpq_t(), f.get_mpq_t(), trow[j].get_mpq_t());
        mpq_sub(dense[j].get_mpq_t(), dense[j].get_mpq_t(), scratch.get_mpq_t());
      }
      value -= f * beta[i];
    }
    tableau.push_back(std::move(dense));
    beta.push_back(std::move(value));
    basis.push_back(old_width);
    basic_row[old_width] = static_cast<std::ptrdiff_t>(tableau.size() - 1);
  }
};

Simplex::Simplex(LinearProgram program) : impl_(std::make_unique<Impl>(std::move(program))) {}
Simplex::~Simplex() = default;
Simplex::Simplex(Simplex&&) noexcept = default;
Simplex& Simplex::operator=(Simplex&&) noexcept = default;

const LinearProgram& Simplex::program() const { return impl_->program; }

LpOutcome Simplex::solve() { return impl_->run(); }

std::size_t Simplex::add_constraint(Constraint row) {
  Impl& s = *impl_;
  const std::size_t index = s.program.add_constraint(std::move(row));
  const std::size_t first = s.rows.size();
  const std::size_t added = s.append_user_row(index);
  if (s.built) {
    if (s.rhs_dirty) s.recompute_beta();
    std::vector<Impl::InternalRow> fresh(std::make_move_iterator(s.rows.begin() + static_cast<std::ptrdiff_t>(first)),
                                         std::make_move_iterator(s.rows.end()));
    s.rows.resize(first);
    for (std::size_t k = 0; k < added; ++k) s.insert_row(std::move(fresh[k]));
  }
  return index;
}

void Simplex::set_rhs(std::size_t row, Rational rhs) {
  Impl& s = *impl_;
  s.program.set_rhs(row, rhs);
  for (auto& r : s.rows) {
    if (!r.origin.is_upper && r.origin.index == row) r.rhs = r.origin.sign > 0 ? rhs : Rational(-rhs);
  }
  s.rhs_dirty = true;
}

void Simplex::set_objective(std::vector<Rational> objective) {
  Impl& s = *impl_;
  s.program.set_objective(std::move(objective));
  s.load_cost();
  s.cost_dirty = true;
}

LpOutcome solve(const LinearProgram& program) {
  Simplex simplex(program);
  return simplex.solve();
}

namespace {

Rational row_activity(const Constraint& c, const std::vector<Rational>& x) {
  Rational total;
  for (const Term& t : c.terms) total += t.coeff * x[t.var];
  return total;
}

}  // namespace

std::optional<std::string> audit(const LinearProgram& program, const LpOutcome& outcome) {
  const std::size_t n = program.variable_count();
  const auto& rows = program.constraints();
  const auto& bounds = program.bounds();
  if (outcome.status == Status::kInfeasible) return std::nullopt;

  if (outcome.status == Status::kUnbounded) {
    if (outcome.ray.size() != n) return "ray has wrong dimension";
    for (std::size_t j = 0; j < n; ++j) {
      if (bounds[j].nonnegative && is_negative(outcome.ray[j])) return "ray leaves x >= 0";
      if (bounds[j].upper && is_positive(outcome.ray[j])) return "ray crosses an upper bound";
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational a = row_activity(rows[i], outcome.ray);
      const Relation rel = rows[i].relation;
      if ((rel == Relation::kLessEqual && is_positive(a)) || (rel == Relation::kGreaterEqual && is_negative(a)) ||
          (rel == Relation::kEqual && !is_zero(a))) {
        return "ray violates row " + std::to_string(i);
      }
    }
    Rational gain;
    for (std::size_t j = 0; j < n; ++j) gain += program.objective()[j] * outcome.ray[j];
    const bool improving = program.sense() == Sense::kMaximize ? is_positive(gain) : is_negative(gain);
    if (!improving) return "ray does not improve the objective";
    return std::nullopt;
  }

  if (outcome.x.size() != n) return "solution has wrong dimension";
  if (outcome.row_duals.size() != rows.size() || outcome.upper_duals.size() != n) return "dual has wrong dimension";
  const auto& x = outcome.x;
  for (std::size_t j = 0; j < n; ++j) {
    if (bounds[j].nonnegative && is_negative(x[j])) return "x" + std::to_string(j) + " below zero";
    if (bounds[j].upper && x[j] > *bounds[j].upper) return "x" + std::to_string(j) + " above its upper bound";
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational a = row_activity(rows[i], x);
    const Relation rel = rows[i].relation;
    if ((rel == Relation::kLessEqual && a > rows[i].rhs) || (rel == Relation::kGreaterEqual && a < rows[i].rhs) ||
        (rel == Relation::kEqual && a != rows[i].rhs)) {
      return "row " + std::to_string(i) + " violated";
    }
  }
  Rational primal_value;
  for (std::size_t j = 0; j < n; ++j) primal_value += program.objective()[j] * x[j];
  if (primal_value != outcome.objective) return "reported objective differs from c.x";

  // Sign conditions are stated for minimization; flip them for maximization.
  const int flip = program.sense() == Sense::kMaximize ? -1 : 1;
  std::vector<Rational> reduced(program.objective());
  Rational dual_value;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational& y = outcome.row_duals[i];
    const int s = flip * sgn(y);
    if (rows[i].relation == Relation::kLessEqual && s > 0) return "dual of <= row " + std::to_string(i) + " has wrong sign";
    if (rows[i].relation == Relation::kGreaterEqual && s < 0) {
      return "dual of >= row " + std::to_string(i) + " has wrong sign";
    }
    if (is_zero(y)) continue;
    for (const Term& t : rows[i].terms) reduced[t.var] -= y * t.coeff;
    dual_value += y * rows[i].rhs;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& w = outcome.upper_duals[j];
    if (is_zero(w)) continue;
    if (!bounds[j].upper) return "upper-bound dual on unbounded variable " + std::to_string(j);
    if (flip * sgn(w) > 0) return "upper-bound dual of x" + std::to_string(j) + " has wrong sign";
    reduced[j] -= w;
    dual_value += w * *bounds[j].upper;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const int s = flip * sgn(reduced[j]);
    if (bounds[j].nonnegative ? s < 0 : s != 0) return "reduced cost of x" + std::to_string(j) + " has wrong sign";
  }
  if (dual_value != primal_value) return "duality gap: primal " + vsparse::to_string(primal_value) + " dual " + vsparse::to_string(dual_value);
  return std::nullopt;
}

}  // namespace vsparse::lp
