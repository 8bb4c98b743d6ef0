#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vsparse/demand.hpp"
#include "vsparse/graph.hpp"
#include "vsparse/metric.hpp"
#include "vsparse/operator.hpp"
#include "vsparse/random.hpp"
#include "vsparse/sparsifier.hpp"

namespace vsparse {

enum class Semantics { kCut, kMetric, kFlow };
// How thoroughly the lower bound minext <= beta was verified. kUnchecked
// means the report only carries the upper-bound value.
enum class Completeness { kExact, kSampled, kUnchecked };

std::string to_string(Semantics semantics);
std::string to_string(Completeness completeness);
Semantics parse_semantics(const std::string& text);

// Terminal bipartition given as a bitmask over terminal positions.
struct CutWitness {
  std::uint64_t side = 0;
  Rational sparsifier_value;  // beta(delta_S)
  Rational min_cut;

  bool operator==(const CutWitness&) const = default;
};

struct MetricWitness {
  Metric terminal_metric;
  Rational sparsifier_value;  // beta(d_Y)
  Rational min_extension;

  bool operator==(const MetricWitness&) const = default;
};

struct DemandWitness {
  DemandSet demands;
  Rational graph_flow;
  Rational sparsifier_flow;

  bool operator==(const DemandWitness&) const = default;
};

using QualityWitness = std::variant<std::monostate, CutWitness, MetricWitness, DemandWitness>;

struct QualityReport {
  Semantics semantics = Semantics::kCut;
  // nullopt means unbounded: some witness has beta > 0 against minext = 0.
  std::optional<Rational> q_value;
  // Attains q_value: its ratio beta/minext (or flow_H/flow_G) equals q_value,
  // or its denominator is 0 with a positive numerator when unbounded.
  QualityWitness witness;
  bool lower_ok = true;
  QualityWitness lower_violation;
  Completeness completeness = Completeness::kExact;

  bool unbounded() const { return !q_value.has_value(); }
};

inline constexpr std::size_t kDefaultCutTerminalCap = 20;

// Exact cut quality by enumerating the 2^(k-1)-1 terminal bipartitions; each
// side excludes the last terminal. Cuts with beta = mincut = 0 are skipped;
// with no contributing cut q_value is 0. Ties keep the smallest mask. Throws
// BudgetExceeded when k exceeds `terminal_cap`.
QualityReport cut_quality(const WeightedGraph& g, const Sparsifier& beta,
                          std::size_t terminal_cap = kDefaultCutTerminalCap);

// sup over terminal metrics of beta(d_Y)/minext(d_Y), as the LP
// max beta(d_X|Y) over vertex metrics d_X with alpha(d_X) <= 1. The lower
// bound is not examined (completeness kUnchecked).
QualityReport metric_quality_upper(const WeightedGraph& g, const Sparsifier& beta);

// sup over terminal metrics of alpha(phi(d_Y))/minext(d_Y), with the
// objective built directly from phi's coefficients. nullopt when unbounded.
std::optional<Rational> evaluate_operator_distortion(const ExtensionOperator& phi, const WeightedGraph& g);

// Reuses one warm-started LP across many evaluations on the same graph.
class QualityEvaluator {
 public:
  explicit QualityEvaluator(const WeightedGraph& g);
  ~QualityEvaluator();
  QualityEvaluator(QualityEvaluator&&) noexcept;
  QualityEvaluator& operator=(QualityEvaluator&&) noexcept;

  QualityReport metric_upper(const Sparsifier& beta);
  std::optional<Rational> operator_distortion(const ExtensionOperator& phi);
  std::optional<Rational> operator_distortion(const OperatorTable& table);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct LowerCheck {
  bool ok = true;
  std::optional<MetricWitness> violation;  // first violating metric found
  std::size_t cut_metrics_checked = 0;
  std::size_t samples_checked = 0;
};

// Checks minext(d_Y) <= beta(d_Y) on every terminal cut metric (exact for cut
// semantics), then on `samples` random metrics drawn from `rng`.
LowerCheck metric_lower_check(const WeightedGraph& g, const Sparsifier& beta, std::size_t samples, Rng& rng);

// Upper bound by LP plus the lower check; completeness kSampled.
QualityReport metric_quality(const WeightedGraph& g, const Sparsifier& beta, std::size_t samples, Rng& rng);

// Maximum concurrent flow fraction, as the optimum of
// min alpha(d) s.t. sum dem_r d(s_r, t_r) >= 1 over metrics d.
// Throws std::invalid_argument when no demand is positive.
Rational max_concurrent_flow(const WeightedGraph& g, const DemandSet& demands);
// Same on H = (terminals, beta); demand endpoints are terminal positions.
Rational max_concurrent_flow(const Sparsifier& h, const DemandSet& demands);

struct FlowComparison {
  Rational graph_flow;
  Rational sparsifier_flow;
};

struct FlowProbe {
  QualityReport report;  // q_value is the largest observed flow_H / flow_G
  QualityReport metric;  // metric_quality_upper used as Q
  std::vector<FlowComparison> comparisons;
};

// For each demand set (endpoints are terminal vertices) compares
// flow_G <= flow_H <= Q flow_G with Q = metric_quality_upper. A failure of
// flow_G <= flow_H is reported through lower_ok; flow_H > Q flow_G is
// impossible for any beta and throws std::logic_error. Sets without a
// positive demand are skipped.
FlowProbe flow_quality_probe(const WeightedGraph& g, const Sparsifier& beta, std::span<const DemandSet> demand_sets);

// Recomputes the witness's numerator (beta value or flow_H) and denominator
// (minext, mincut or flow_G) from scratch and checks numerator == q *
// denominator, or denominator 0 with a positive numerator when unbounded.
// A report without a witness reproduces q_value 0.
bool witness_reproduces(const WeightedGraph& g, const Sparsifier& beta, const QualityReport& report);

}  // namespace vsparse
