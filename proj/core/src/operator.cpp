#include "vsparse/operator.hpp"

#include <algorithm>
#include <stdexcept>

#include "vsparse/lp.hpp"
#include "vsparse/pairs.hpp"
#include "metric_lp.hpp"

namespace vsparse {

namespace {

using detail::TriangleRow;
using detail::normalized_metric_polytope;
using detail::triangle_rows;

std::vector<std::optional<std::size_t>> terminal_pair_map(std::size_t n, std::span<const std::size_t> terminals) {
  std::vector<std::optional<std::size_t>> position(n);
  for (std::size_t p = 0; p < terminals.size(); ++p) position.at(terminals[p]) = p;
  std::vector<std::optional<std::size_t>> map(pair_count(n));
  for (std::size_t e = 0; e < map.size(); ++e) {
    auto [i, j] = pair_at(e, n);
    if (position[i] && position[j]) map[e] = pair_index(*position[i], *position[j], terminals.size());
  }
  return map;
}

// Master variables: phi[e][t] for every non-terminal vertex pair e and every
// terminal pair t, followed by Q.
struct MasterLayout {
  std::size_t n;
  std::vector<std::size_t> terminals;
  std::size_t terminal_pairs;
  std::vector<std::optional<std::size_t>> terminal_pair_of;
  std::vector<std::optional<std::size_t>> free_rank;
  std::size_t free_count = 0;

  MasterLayout(std::size_t vertices, std::vector<std::size_t> terms)
      : n(vertices),
        terminals(std::move(terms)),
        terminal_pairs(pair_count(terminals.size())),
        terminal_pair_of(terminal_pair_map(n, terminals)),
        free_rank(pair_count(n)) {
    for (std::size_t e = 0; e < free_rank.size(); ++e) {
      if (!terminal_pair_of[e]) free_rank[e] = free_count++;
    }
  }

  std::size_t var(std::size_t e, std::size_t t) const { return *free_rank[e] * terminal_pairs + t; }
  std::size_t q_var() const { return free_count * terminal_pairs; }
  std::size_t variable_count() const { return q_var() + 1; }

  OperatorTable table_from(std::span<const Rational> x) const {
    OperatorTable table = ExtensionOperator::identity_table(n, terminals);
    for (std::size_t e = 0; e < free_rank.size(); ++e) {
      if (!free_rank[e]) continue;
      for (std::size_t t = 0; t < terminal_pairs; ++t) table[e][t] = x[var(e, t)];
    }
    return table;
  }

  lp::Constraint to_row(const OperatorCut& cut) const {
    lp::Constraint row{.relation = lp::Relation::kLessEqual};
    for (const auto& entry : cut.entries) {
      if (free_rank[entry.vertex_pair]) {
        row.terms.push_back({var(entry.vertex_pair, entry.terminal_pair), entry.coeff});
      } else if (*terminal_pair_of[entry.vertex_pair] == entry.terminal_pair) {
        row.rhs -= entry.coeff;
      }
    }
    if (!is_zero(cut.q_coeff)) row.terms.push_back({q_var(), -cut.q_coeff});
    return row;
  }
};

OperatorCut distortion_cut(const WeightedGraph& g, const Metric& d_terminals, const Rational& min_ext) {
  OperatorCut cut;
  const auto weights = g.pair_weights();
  const auto d = d_terminals.pair_values();
  for (std::size_t e = 0; e < weights.size(); ++e) {
    if (is_zero(weights[e])) continue;
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (!is_zero(d[t])) cut.entries.push_back({e, t, weights[e] * d[t]});
    }
  }
  cut.q_coeff = min_ext;
  return cut;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExtensionOperator

OperatorTable ExtensionOperator::identity_table(std::size_t n, std::span<const std::size_t> terminals) {
  const auto map = terminal_pair_map(n, terminals);
  OperatorTable table(pair_count(n), std::vector<Rational>(pair_count(terminals.size())));
  for (std::size_t e = 0; e < table.size(); ++e) {
    if (map[e]) table[e][*map[e]] = 1;
  }
  return table;
}

ExtensionOperator::ExtensionOperator(std::size_t n, std::vector<std::size_t> terminals, OperatorTable table,
                                     Rational distortion, bool allow_negative)
    : n_(n), terminals_(std::move(terminals)), table_(std::move(table)), distortion_(std::move(distortion)) {
  if (terminals_.empty() || terminals_.size() > n_) throw std::invalid_argument("terminal count must be in [1, n]");
  const auto map = terminal_pair_map(n_, terminals_);
  const std::size_t tp = pair_count(terminals_.size());
  if (table_.size() != pair_count(n_)) throw std::invalid_argument("operator table has wrong number of rows");
  for (std::size_t e = 0; e < table_.size(); ++e) {
    if (table_[e].size() != tp) throw std::invalid_argument("operator table row has wrong width");
    for (std::size_t t = 0; t < tp; ++t) {
      if (map[e]) {
        if (table_[e][t] != (t == *map[e] ? 1 : 0)) {
          throw std::invalid_argument("operator rows for terminal pairs must be the identity");
        }
      } else if (!allow_negative && is_negative(table_[e][t])) {
        throw std::invalid_argument("operator coefficients must be nonnegative");
      }
    }
  }
}

const Rational& ExtensionOperator::coefficient(std::size_t i, std::size_t j, std::size_t p, std::size_t q) const {
  auto pos = [&](std::size_t v) {
    auto it = std::find(terminals_.begin(), terminals_.end(), v);
    if (it == terminals_.end()) throw std::invalid_argument("vertex " + std::to_string(v) + " is not a terminal");
    return static_cast<std::size_t>(it - terminals_.begin());
  };
  if (i == j || i >= n_ || j >= n_) throw std::out_of_range("invalid vertex pair");
  const std::size_t a = pos(p);
  const std::size_t b = pos(q);
  if (a == b) throw std::invalid_argument("terminal pair must be distinct");
  return table_[pair_index(i, j, n_)][pair_index(a, b, terminals_.size())];
}

std::vector<Rational> apply_values(const OperatorTable& table, std::size_t n, const Metric& d_terminals) {
  if (table.size() != pair_count(n)) throw std::invalid_argument("operator table does not match vertex count");
  const auto d = d_terminals.pair_values();
  std::vector<Rational> out(table.size());
  for (std::size_t e = 0; e < table.size(); ++e) {
    if (table[e].size() != d.size()) throw std::invalid_argument("terminal metric does not match operator");
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (!is_zero(table[e][t]) && !is_zero(d[t])) out[e] += table[e][t] * d[t];
    }
  }
  return out;
}

Metric apply(const ExtensionOperator& phi, const Metric& d_terminals) {
  if (d_terminals.size() != phi.terminal_count()) throw std::invalid_argument("terminal metric size mismatch");
  return Metric::from_pairs(phi.vertex_count(), apply_values(phi.table(), phi.vertex_count(), d_terminals));
}

ExtensionOperator zero_extension_operator(const WeightedGraph& g, std::span<const std::size_t> assignment) {
  const std::size_t n = g.vertex_count();
  const std::size_t k = g.terminal_count();
  if (assignment.size() != n) throw std::invalid_argument("assignment must cover every vertex");
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.is_terminal(assignment[v])) throw std::invalid_argument("assignment targets a non-terminal");
    if (g.is_terminal(v) && assignment[v] != v) throw std::invalid_argument("assignment must fix terminals");
  }
  OperatorTable table(pair_count(n), std::vector<Rational>(pair_count(k)));
  for (std::size_t e = 0; e < table.size(); ++e) {
    auto [i, j] = pair_at(e, n);
    const std::size_t a = *g.terminal_position(assignment[i]);
    const std::size_t b = *g.terminal_position(assignment[j]);
    if (a != b) table[e][pair_index(a, b, k)] = 1;
  }
  return ExtensionOperator(n, std::vector<std::size_t>(g.terminals().begin(), g.terminals().end()), std::move(table),
                           0);
}

Sparsifier operator_to_sparsifier(const ExtensionOperator& phi, const WeightedGraph& g) {
  if (phi.vertex_count() != g.vertex_count() ||
      !std::equal(phi.terminals().begin(), phi.terminals().end(), g.terminals().begin(), g.terminals().end())) {
    throw std::invalid_argument("operator does not match the graph's vertices and terminals");
  }
  const std::size_t tp = pair_count(phi.terminal_count());
  std::vector<Rational> beta(tp);
  const auto weights = g.pair_weights();
  for (std::size_t e = 0; e < weights.size(); ++e) {
    if (is_zero(weights[e])) continue;
    for (std::size_t t = 0; t < tp; ++t) {
      if (!is_zero(phi.table()[e][t])) beta[t] += weights[e] * phi.table()[e][t];
    }
  }
  return Sparsifier(phi.terminal_count(), std::move(beta));
}

Rational OperatorCut::evaluate(const OperatorTable& table, const Rational& q) const {
  Rational total;
  for (const auto& entry : entries) total += entry.coeff * table.at(entry.vertex_pair).at(entry.terminal_pair);
  total -= q_coeff * q;
  return total;
}

// ---------------------------------------------------------------------------
// Membership oracle

struct MembershipOracle::Impl {
  std::size_t n;
  std::vector<std::size_t> terminals;
  std::size_t k;
  std::size_t terminal_pairs;
  bool check_nonnegativity;
  std::vector<std::optional<std::size_t>> terminal_pair_of;
  std::vector<TriangleRow> rows;
  std::optional<lp::Simplex> simplex;

  Impl(std::size_t vertices, std::vector<std::size_t> terms, bool nonneg)
      : n(vertices),
        terminals(std::move(terms)),
        k(terminals.size()),
        terminal_pairs(pair_count(k)),
        check_nonnegativity(nonneg),
        terminal_pair_of(terminal_pair_map(n, terminals)) {
    for (const TriangleRow& t : triangle_rows(n)) {
      // Rows among terminal pairs only hold because d_Y is a metric.
      if (terminal_pair_of[t.long_side] && terminal_pair_of[t.left] && terminal_pair_of[t.right]) continue;
      rows.push_back(t);
    }
    if (terminal_pairs > 0) simplex.emplace(normalized_metric_polytope(k));
  }

  // Maximizes objective.d over normalized terminal metrics; returns the
  // maximizer when the optimum is strictly positive.
  std::optional<std::pair<Metric, Rational>> maximize(std::vector<Rational> objective) {
    if (std::none_of(objective.begin(), objective.end(), [](const Rational& c) { return is_positive(c); })) {
      return std::nullopt;
    }
    simplex->set_objective(std::move(objective));
    lp::LpOutcome out = simplex->solve();
    if (out.status != lp::Status::kOptimal) {
      throw std::logic_error("membership separation LP is " + lp::to_string(out.status));
    }
    if (!is_positive(out.objective)) return std::nullopt;
    return std::make_pair(Metric::from_pairs(k, std::move(out.x)), std::move(out.objective));
  }

  std::vector<MembershipViolation> separate(const OperatorTable& table) {
    std::vector<MembershipViolation> found;
    if (!simplex) return found;
    if (table.size() != pair_count(n)) throw std::invalid_argument("operator table does not match vertex count");
    std::vector<Rational> objective(terminal_pairs);
    for (const TriangleRow& row : rows) {
      for (std::size_t t = 0; t < terminal_pairs; ++t) {
        objective[t] = table[row.long_side][t] - table[row.left][t] - table[row.right][t];
      }
      auto hit = maximize(objective);
      if (!hit) continue;
      MembershipViolation v{.long_a = row.x, .long_b = row.y, .apex = row.z, .witness = hit->first,
                            .excess = hit->second};
      const auto d = v.witness.pair_values();
      for (std::size_t t = 0; t < terminal_pairs; ++t) {
        if (is_zero(d[t])) continue;
        v.cut.entries.push_back({row.long_side, t, d[t]});
        v.cut.entries.push_back({row.left, t, -d[t]});
        v.cut.entries.push_back({row.right, t, -d[t]});
      }
      found.push_back(std::move(v));
    }
    if (check_nonnegativity) {
      for (std::size_t e = 0; e < table.size(); ++e) {
        if (terminal_pair_of[e]) continue;
        for (std::size_t t = 0; t < terminal_pairs; ++t) objective[t] = -table[e][t];
        auto hit = maximize(objective);
        if (!hit) continue;
        auto [i, j] = pair_at(e, n);
        MembershipViolation v{.long_a = i, .long_b = j, .apex = i, .nonnegativity_row = true,
                              .witness = hit->first, .excess = hit->second};
        const auto d = v.witness.pair_values();
        for (std::size_t t = 0; t < terminal_pairs; ++t) {
          if (!is_zero(d[t])) v.cut.entries.push_back({e, t, -d[t]});
        }
        found.push_back(std::move(v));
      }
    }
    return found;
  }
};

MembershipOracle::MembershipOracle(std::size_t n, std::vector<std::size_t> terminals, bool check_nonnegativity)
    : impl_(std::make_unique<Impl>(n, std::move(terminals), check_nonnegativity)) {}
MembershipOracle::~MembershipOracle() = default;
MembershipOracle::MembershipOracle(MembershipOracle&&) noexcept = default;
MembershipOracle& MembershipOracle::operator=(MembershipOracle&&) noexcept = default;

std::vector<MembershipViolation> MembershipOracle::separate(const OperatorTable& table) {
  return impl_->separate(table);
}

std::vector<MembershipViolation> membership_oracle(const ExtensionOperator& phi) {
  MembershipOracle oracle(phi.vertex_count(), std::vector<std::size_t>(phi.terminals().begin(), phi.terminals().end()));
  return oracle.separate(phi.table());
}

// ---------------------------------------------------------------------------
// Distortion oracle

struct DistortionOracle::Impl {
  WeightedGraph g;
  std::size_t n;
  std::vector<std::optional<std::size_t>> terminal_pair_of;
  MinExtensionSolver extension;
  std::optional<lp::Simplex> simplex;

  explicit Impl(WeightedGraph graph)
      : g(std::move(graph)),
        n(g.vertex_count()),
        terminal_pair_of(terminal_pair_map(n, g.terminals())),
        extension(g) {
    if (pair_count(n) > 0) simplex.emplace(normalized_metric_polytope(n));
  }

  std::optional<DistortionViolation> separate(const OperatorTable& table, const Rational& q) {
    if (!simplex) return std::nullopt;
    const std::size_t tp = pair_count(g.terminal_count());
    if (table.size() != pair_count(n)) throw std::invalid_argument("operator table does not match vertex count");
    const auto weights = g.pair_weights();
    // beta_t = sum_e alpha_e phi[e][t] is the coefficient of d_X on terminal pair t.
    std::vector<Rational> beta(tp);
    for (std::size_t e = 0; e < weights.size(); ++e) {
      if (is_zero(weights[e])) continue;
      for (std::size_t t = 0; t < tp; ++t) beta[t] += weights[e] * table[e][t];
    }
    std::vector<Rational> objective(pair_count(n));
    for (std::size_t v = 0; v < objective.size(); ++v) {
      objective[v] = -q * weights[v];
      if (terminal_pair_of[v]) objective[v] += beta[*terminal_pair_of[v]];
    }
    simplex->set_objective(std::move(objective));
    lp::LpOutcome out = simplex->solve();
    if (out.status != lp::Status::kOptimal) {
      throw std::logic_error("distortion separation LP is " + lp::to_string(out.status));
    }
    if (!is_positive(out.objective)) return std::nullopt;

    DistortionViolation v;
    v.vertex_metric = Metric::from_pairs(n, std::move(out.x));
    v.terminal_metric = restrict(v.vertex_metric, g.terminals());
    v.min_extension = extension.value(v.terminal_metric);
    const auto d = v.terminal_metric.pair_values();
    for (std::size_t t = 0; t < tp; ++t) v.operator_cost += beta[t] * d[t];
    v.cut = distortion_cut(g, v.terminal_metric, v.min_extension);
    return v;
  }
};

DistortionOracle::DistortionOracle(WeightedGraph g) : impl_(std::make_unique<Impl>(std::move(g))) {}
DistortionOracle::~DistortionOracle() = default;
DistortionOracle::DistortionOracle(DistortionOracle&&) noexcept = default;
DistortionOracle& DistortionOracle::operator=(DistortionOracle&&) noexcept = default;

std::optional<DistortionViolation> DistortionOracle::separate(const OperatorTable& table, const Rational& q) {
  return impl_->separate(table, q);
}

MinExtensionSolver& DistortionOracle::extension_solver() { return impl_->extension; }

std::optional<DistortionViolation> distortion_oracle(const ExtensionOperator& phi, const Rational& q,
                                                     const WeightedGraph& g) {
  DistortionOracle oracle(g);
  return oracle.separate(phi.table(), q);
}

// ---------------------------------------------------------------------------
// Optimal operator

std::string to_string(OperatorSolveStatus status) {
  switch (status) {
    case OperatorSolveStatus::kConverged:
      return "converged";
    case OperatorSolveStatus::kIterationLimit:
      return "iteration-limit";
    case OperatorSolveStatus::kMasterFailure:
      return "master-failure";
  }
  return "unknown";
}

OperatorSolveReport find_optimal_operator(const WeightedGraph& g, const OperatorSolveOptions& options) {
  const std::vector<std::size_t> terminals(g.terminals().begin(), g.terminals().end());
  const MasterLayout layout(g.vertex_count(), terminals);
  const std::size_t k = terminals.size();

  std::vector<Rational> objective(layout.variable_count());
  objective[layout.q_var()] = 1;
  lp::LinearProgram master(lp::Sense::kMinimize, std::move(objective));
  if (options.allow_negative) {
    for (std::size_t v = 0; v < layout.q_var(); ++v) master.set_free(v);
  }

  DistortionOracle distortion(g);
  MembershipOracle membership(g.vertex_count(), terminals, options.allow_negative);

  struct DistortionRow {
    Metric terminal_metric;
    Rational min_extension;
    OperatorCut cut;
    std::size_t row = 0;  // index in the master program
  };
  std::vector<DistortionRow> distortion_rows;

  OperatorSolveReport report;
  if (options.seed_cut_metrics && k >= 2) {
    const std::uint64_t sides = std::uint64_t{1} << (k - 1);
    for (std::uint64_t side = 1; side < sides; ++side) {
      Metric d = cut_metric(side, k);
      Rational c = terminal_min_cut(distortion.extension_solver(), side);
      OperatorCut cut = distortion_cut(g, d, c);
      const std::size_t row = master.add_constraint(layout.to_row(cut));
      distortion_rows.push_back({std::move(d), std::move(c), std::move(cut), row});
      ++report.seed_cuts;
    }
  }

  std::vector<lp::SeparationOracle> oracles;
  oracles.emplace_back([&](std::span<const Rational> x) {
    std::vector<lp::Constraint> rows;
    for (const MembershipViolation& v : membership.separate(layout.table_from(x))) rows.push_back(layout.to_row(v.cut));
    return rows;
  });
  oracles.emplace_back([&](std::span<const Rational> x) {
    std::vector<lp::Constraint> rows;
    auto v = distortion.separate(layout.table_from(x), x[layout.q_var()]);
    if (!v) return rows;
    rows.push_back(layout.to_row(v->cut));
    distortion_rows.push_back({std::move(v->terminal_metric), std::move(v->min_extension), std::move(v->cut)});
    return rows;
  });

  lp::CuttingPlaneResult run = lp::cutting_plane(std::move(master), oracles, options.limits);
  report.master_iterations = run.iterations;
  report.membership_cuts = run.cuts_per_oracle[0];
  report.distortion_cuts = run.cuts_per_oracle[1];
  report.converged = run.converged;
  switch (run.status) {
    case lp::CuttingPlaneStatus::kConverged:
      report.status = OperatorSolveStatus::kConverged;
      break;
    case lp::CuttingPlaneStatus::kIterationLimit:
      report.status = OperatorSolveStatus::kIterationLimit;
      break;
    default:
      report.status = OperatorSolveStatus::kMasterFailure;
      return report;
  }

  // Oracle rows were appended in generation order.
  std::size_t next = report.seed_cuts;
  for (const lp::GeneratedCut& cut : run.cuts) {
    if (cut.oracle == 1) distortion_rows[next++].row = cut.row;
  }

  const auto& x = run.master.x;
  OperatorTable table = layout.table_from(x);
  const Rational q = x[layout.q_var()];
  for (const DistortionRow& row : distortion_rows) {
    if (!is_zero(row.cut.evaluate(table, q))) continue;
    const Rational weight = abs(run.master.row_duals[row.row]);
    auto it = std::find_if(report.worst_metrics.begin(), report.worst_metrics.end(),
                           [&](const WorstMetric& w) { return w.terminal_metric == row.terminal_metric; });
    if (it == report.worst_metrics.end()) {
      report.worst_metrics.push_back({row.terminal_metric, row.min_extension, weight});
    } else {
      it->dual_weight += weight;
    }
  }
  report.op = ExtensionOperator(g.vertex_count(), terminals, std::move(table), q, options.allow_negative);
  return report;
}

}  // namespace vsparse
