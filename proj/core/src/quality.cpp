#include "vsparse/quality.hpp"

#include <stdexcept>

#include "metric_lp.hpp"
#include "vsparse/extension.hpp"
#include "vsparse/lp.hpp"
#include "vsparse/pairs.hpp"

namespace vsparse {

std::string to_string(Semantics semantics) {
  switch (semantics) {
    case Semantics::kCut:
      return "cut";
    case Semantics::kMetric:
      return "metric";
    case Semantics::kFlow:
      return "flow";
  }
  return "unknown";
}

std::string to_string(Completeness completeness) {
  switch (completeness) {
    case Completeness::kExact:
      return "exact";
    case Completeness::kSampled:
      return "sampled";
    case Completeness::kUnchecked:
      return "unchecked";
  }
  return "unknown";
}

Semantics parse_semantics(const std::string& text) {
  if (text == "cut") return Semantics::kCut;
  if (text == "metric") return Semantics::kMetric;
  if (text == "flow") return Semantics::kFlow;
  throw std::invalid_argument("unknown semantics '" + text + "' (expected cut, metric or flow)");
}

namespace {

void require_match(const WeightedGraph& g, const Sparsifier& beta) {
  if (beta.terminal_count() != g.terminal_count()) {
    throw std::invalid_argument("sparsifier has " + std::to_string(beta.terminal_count()) +
                                " terminals, graph has " + std::to_string(g.terminal_count()));
  }
}

Rational cut_value(const Sparsifier& beta, std::uint64_t side) {
  const std::size_t k = beta.terminal_count();
  Rational total;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = p + 1; q < k; ++q) {
      if (((side >> p) & 1U) != ((side >> q) & 1U)) total += beta.weight(p, q);
    }
  }
  return total;
}

// Tracks the largest ratio numerator/denominator, with a zero denominator and
// positive numerator meaning unbounded. 0/0 is skipped.
class RatioMax {
 public:
  bool offer(const Rational& numerator, const Rational& denominator) {
    if (is_zero(denominator)) {
      if (!is_positive(numerator) || unbounded_) return false;
      unbounded_ = true;
      return true;
    }
    if (unbounded_) return false;
    Rational ratio = numerator / denominator;
    if (have_ && ratio <= best_) return false;
    best_ = std::move(ratio);
    have_ = true;
    return true;
  }
  std::optional<Rational> value() const {
    if (unbounded_) return std::nullopt;
    return have_ ? best_ : Rational(0);
  }

 private:
  bool unbounded_ = false;
  bool have_ = false;
  Rational best_;
};

std::vector<std::optional<std::size_t>> terminal_pairs_of(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<std::size_t>> map(pair_count(n));
  for (std::size_t e = 0; e < map.size(); ++e) {
    auto [i, j] = pair_at(e, n);
    auto a = g.terminal_position(i);
    auto b = g.terminal_position(j);
    if (a && b) map[e] = pair_index(*a, *b, g.terminal_count());
  }
  return map;
}

// min alpha(d) s.t. sum dem d(s,t) >= 1 over metrics on m points.
Rational concurrent_flow(std::size_t m, std::span<const Rational> capacities, const DemandSet& demands) {
  if (!demands.has_positive()) throw std::invalid_argument("concurrent flow needs a positive demand");
  lp::LinearProgram program(lp::Sense::kMinimize, std::vector<Rational>(capacities.begin(), capacities.end()));
  detail::add_metric_cone(program, m);
  lp::Constraint total{.relation = lp::Relation::kGreaterEqual, .rhs = 1};
  for (const Demand& d : demands.demands()) {
    if (d.source >= m || d.sink >= m) throw std::invalid_argument("demand endpoint out of range");
    if (!is_zero(d.amount)) total.terms.push_back({pair_index(d.source, d.sink, m), d.amount});
  }
  program.add_constraint(std::move(total));
  lp::LpOutcome out = lp::solve(program);
  if (out.status != lp::Status::kOptimal) throw std::logic_error("concurrent flow LP is " + lp::to_string(out.status));
  return out.objective;
}

DemandSet to_terminal_positions(const WeightedGraph& g, const DemandSet& demands) {
  std::vector<Demand> mapped;
  for (const Demand& d : demands.demands()) {
    auto s = d.source < g.vertex_count() ? g.terminal_position(d.source) : std::nullopt;
    auto t = d.sink < g.vertex_count() ? g.terminal_position(d.sink) : std::nullopt;
    if (!s || !t) throw std::invalid_argument("demand endpoints must be terminals");
    mapped.push_back({*s, *t, d.amount});
  }
  return DemandSet(std::move(mapped));
}

bool ratio_matches(const std::optional<Rational>& q, const Rational& numerator, const Rational& denominator) {
  if (!q) return is_zero(denominator) && is_positive(numerator);
  if (is_zero(denominator)) return is_zero(*q) && is_zero(numerator);
  return numerator == *q * denominator;
}

}  // namespace

// ---------------------------------------------------------------------------

QualityReport cut_quality(const WeightedGraph& g, const Sparsifier& beta, std::size_t terminal_cap) {
  require_match(g, beta);
  const std::size_t k = g.terminal_count();
  if (k > terminal_cap || k > 63) {
    throw BudgetExceeded("cut enumeration over " + std::to_string(k) + " terminals exceeds the cap of " +
                         std::to_string(std::min<std::size_t>(terminal_cap, 63)));
  }
  QualityReport report{.semantics = Semantics::kCut, .completeness = Completeness::kExact};
  if (k < 2) {
    report.q_value = 0;
    return report;
  }
  MinExtensionSolver solver(g);
  RatioMax best;
  const std::uint64_t sides = std::uint64_t{1} << (k - 1);
  for (std::uint64_t side = 1; side < sides; ++side) {
    Rational mincut = terminal_min_cut(solver, side);
    Rational value = cut_value(beta, side);
    if (value < mincut && report.lower_ok) {
      report.lower_ok = false;
      report.lower_violation = CutWitness{side, value, mincut};
    }
    if (best.offer(value, mincut)) report.witness = CutWitness{side, std::move(value), std::move(mincut)};
  }
  report.q_value = best.value();
  return report;
}

struct QualityEvaluator::Impl {
  WeightedGraph g;
  std::vector<std::optional<std::size_t>> terminal_pair_of;
  MinExtensionSolver extension;
  std::optional<lp::Simplex> simplex;

  explicit Impl(const WeightedGraph& graph) : g(graph), terminal_pair_of(terminal_pairs_of(g)), extension(g) {
    const std::size_t n = g.vertex_count();
    if (g.terminal_count() < 2) return;
    lp::LinearProgram program(lp::Sense::kMaximize, std::vector<Rational>(pair_count(n)));
    detail::add_metric_cone(program, n);
    lp::Constraint budget{.relation = lp::Relation::kLessEqual, .rhs = 1};
    const auto weights = g.pair_weights();
    for (std::size_t e = 0; e < weights.size(); ++e) {
      if (!is_zero(weights[e])) budget.terms.push_back({e, weights[e]});
    }
    program.add_constraint(std::move(budget));
    simplex.emplace(std::move(program));
  }

  // Maximizes the terminal-pair functional `coeffs` over d_X with
  // alpha(d_X) <= 1. Returns the optimum (nullopt when unbounded) and the
  // restriction of the maximizer or of the improving ray.
  std::pair<std::optional<Rational>, Metric> maximize(std::span<const Rational> coeffs) {
    const std::size_t n = g.vertex_count();
    if (!simplex) return {Rational(0), Metric::zero(g.terminal_count())};
    std::vector<Rational> objective(pair_count(n));
    for (std::size_t e = 0; e < objective.size(); ++e) {
      if (terminal_pair_of[e]) objective[e] = coeffs[*terminal_pair_of[e]];
    }
    simplex->set_objective(std::move(objective));
    lp::LpOutcome out = simplex->solve();
    if (out.status == lp::Status::kUnbounded) {
      return {std::nullopt, restrict(Metric::from_pairs(n, std::move(out.ray)), g.terminals())};
    }
    if (out.status != lp::Status::kOptimal) throw std::logic_error("quality LP is " + lp::to_string(out.status));
    return {std::move(out.objective), restrict(Metric::from_pairs(n, std::move(out.x)), g.terminals())};
  }

  QualityReport metric_upper(const Sparsifier& beta) {
    require_match(g, beta);
    QualityReport report{.semantics = Semantics::kMetric, .completeness = Completeness::kUnchecked};
    auto [q, d] = maximize(beta.pair_weights());
    report.q_value = std::move(q);
    if (g.terminal_count() >= 2) {
      Rational value = beta.evaluate(d);
      Rational ext = extension.value(d);
      report.witness = MetricWitness{std::move(d), std::move(value), std::move(ext)};
    }
    return report;
  }

  std::optional<Rational> operator_distortion(const OperatorTable& table) {
    const std::size_t tp = pair_count(g.terminal_count());
    if (table.size() != pair_count(g.vertex_count())) {
      throw std::invalid_argument("operator table does not match the graph");
    }
    const auto weights = g.pair_weights();
    std::vector<Rational> coeffs(tp);
    for (std::size_t e = 0; e < table.size(); ++e) {
      if (table[e].size() != tp) throw std::invalid_argument("operator table does not match the terminal count");
      if (is_zero(weights[e])) continue;
      for (std::size_t t = 0; t < tp; ++t) coeffs[t] += weights[e] * table[e][t];
    }
    return maximize(coeffs).first;
  }
};

QualityEvaluator::QualityEvaluator(const WeightedGraph& g) : impl_(std::make_unique<Impl>(g)) {}
QualityEvaluator::~QualityEvaluator() = default;
QualityEvaluator::QualityEvaluator(QualityEvaluator&&) noexcept = default;
QualityEvaluator& QualityEvaluator::operator=(QualityEvaluator&&) noexcept = default;

QualityReport QualityEvaluator::metric_upper(const Sparsifier& beta) { return impl_->metric_upper(beta); }

std::optional<Rational> QualityEvaluator::operator_distortion(const ExtensionOperator& phi) {
  const auto& g = impl_->g;
  if (phi.vertex_count() != g.vertex_count() ||
      !std::equal(phi.terminals().begin(), phi.terminals().end(), g.terminals().begin(), g.terminals().end())) {
    throw std::invalid_argument("operator does not match the graph's vertices and terminals");
  }
  return impl_->operator_distortion(phi.table());
}

std::optional<Rational> QualityEvaluator::operator_distortion(const OperatorTable& table) {
  return impl_->operator_distortion(table);
}

QualityReport metric_quality_upper(const WeightedGraph& g, const Sparsifier& beta) {
  return QualityEvaluator(g).metric_upper(beta);
}

std::optional<Rational> evaluate_operator_distortion(const ExtensionOperator& phi, const WeightedGraph& g) {
  return QualityEvaluator(g).operator_distortion(phi);
}

LowerCheck metric_lower_check(const WeightedGraph& g, const Sparsifier& beta, std::size_t samples, Rng& rng) {
  require_match(g, beta);
  LowerCheck check;
  const std::size_t k = g.terminal_count();
  if (k < 2) return check;
  if (k > 63) throw BudgetExceeded("cut metric enumeration needs k <= 63");
  MinExtensionSolver solver(g);
  const std::uint64_t sides = std::uint64_t{1} << (k - 1);
  for (std::uint64_t side = 1; side < sides; ++side) {
    ++check.cut_metrics_checked;
    Rational mincut = terminal_min_cut(solver, side);
    Rational value = cut_value(beta, side);
    if (value < mincut) {
      check.ok = false;
      check.violation = MetricWitness{cut_metric(side, k), std::move(value), std::move(mincut)};
      return check;
    }
  }
  for (std::size_t s = 0; s < samples; ++s) {
    ++check.samples_checked;
    Metric d = random_metric(rng, k);
    Rational ext = solver.value(d);
    Rational value = beta.evaluate(d);
    if (value < ext) {
      check.ok = false;
      check.violation = MetricWitness{std::move(d), std::move(value), std::move(ext)};
      return check;
    }
  }
  return check;
}

QualityReport metric_quality(const WeightedGraph& g, const Sparsifier& beta, std::size_t samples, Rng& rng) {
  QualityReport report = metric_quality_upper(g, beta);
  LowerCheck lower = metric_lower_check(g, beta, samples, rng);
  report.lower_ok = lower.ok;
  if (lower.violation) report.lower_violation = std::move(*lower.violation);
  report.completeness = Completeness::kSampled;
  return report;
}

Rational max_concurrent_flow(const WeightedGraph& g, const DemandSet& demands) {
  return concurrent_flow(g.vertex_count(), g.pair_weights(), demands);
}

Rational max_concurrent_flow(const Sparsifier& h, const DemandSet& demands) {
  return concurrent_flow(h.terminal_count(), h.pair_weights(), demands);
}

FlowProbe flow_quality_probe(const WeightedGraph& g, const Sparsifier& beta, std::span<const DemandSet> demand_sets) {
  require_match(g, beta);
  FlowProbe probe;
  probe.metric = metric_quality_upper(g, beta);
  probe.report = QualityReport{.semantics = Semantics::kFlow, .completeness = Completeness::kSampled};
  const std::optional<Rational>& q = probe.metric.q_value;
  RatioMax best;
  for (const DemandSet& demands : demand_sets) {
    if (!demands.has_positive()) continue;
    Rational flow_g = max_concurrent_flow(g, demands);
    Rational flow_h = max_concurrent_flow(beta, to_terminal_positions(g, demands));
    if (q && flow_h > *q * flow_g) {
      throw std::logic_error("sparsifier flow " + to_string(flow_h) + " exceeds Q = " + to_string(*q) +
                             " times graph flow " + to_string(flow_g));
    }
    if (flow_g > flow_h && probe.report.lower_ok) {
      probe.report.lower_ok = false;
      probe.report.lower_violation = DemandWitness{demands, flow_g, flow_h};
    }
    if (best.offer(flow_h, flow_g)) probe.report.witness = DemandWitness{demands, flow_g, flow_h};
    probe.comparisons.push_back({std::move(flow_g), std::move(flow_h)});
  }
  probe.report.q_value = best.value();
  return probe;
}

bool witness_reproduces(const WeightedGraph& g, const Sparsifier& beta, const QualityReport& report) {
  require_match(g, beta);
  return std::visit(
      [&](const auto& w) -> bool {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, std::monostate>) {
          return report.q_value && is_zero(*report.q_value);
        } else if constexpr (std::is_same_v<W, CutWitness>) {
          const std::uint64_t full = (std::uint64_t{1} << g.terminal_count()) - 1;
          if (w.side == 0 || (w.side & full) == full) return false;
          Rational mincut = terminal_min_cut(g, w.side);
          Rational value = cut_value(beta, w.side);
          return mincut == w.min_cut && value == w.sparsifier_value && ratio_matches(report.q_value, value, mincut);
        } else if constexpr (std::is_same_v<W, MetricWitness>) {
          Rational ext = min_extension(g, w.terminal_metric).value;
          Rational value = beta.evaluate(w.terminal_metric);
          return ext == w.min_extension && value == w.sparsifier_value && ratio_matches(report.q_value, value, ext);
        } else {
          Rational flow_g = max_concurrent_flow(g, w.demands);
          Rational flow_h = max_concurrent_flow(beta, to_terminal_positions(g, w.demands));
          return flow_g == w.graph_flow && flow_h == w.sparsifier_flow &&
                 ratio_matches(report.q_value, flow_h, flow_g);
        }
      },
      report.witness);
}

}  // namespace vsparse
