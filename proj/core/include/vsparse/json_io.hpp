#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vsparse/certificates.hpp"
#include "vsparse/demand.hpp"
#include "vsparse/graph.hpp"
#include "vsparse/metric.hpp"
#include "vsparse/operator.hpp"
#include "vsparse/quality.hpp"
#include "vsparse/sparsifier.hpp"

namespace vsparse::io {

using Json = nlohmann::ordered_json;

// Malformed input. what() names the location: "line L, column C" for syntax
// errors, a field path such as "edges[2][1]" for content errors.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses JSON text; `source` prefixes diagnostics (usually a file name).
Json parse_text(const std::string& text, const std::string& source = "input");
// Two-space indented with a trailing newline.
std::string dump(const Json& value);

// {"n": 3, "terminals": [0, 1], "edges": [[0, 2, "1/1"], ...]}
Json to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& value);

// {"demands": [[s, t, "dem"], ...]}
Json to_json(const DemandSet& demands);
DemandSet demands_from_json(const Json& value);

// Full distance table of "num/den" strings.
Json to_json(const Metric& d);
Metric metric_from_json(const Json& value, const std::string& path = "metric");

// {"n", "k", "terminals", "Q", "coeffs": [[i, j, p, q, "val"], ...]} with
// i < j vertex indices, p < q terminal vertex indices; zero coefficients are
// omitted.
Json to_json(const ExtensionOperator& phi);
ExtensionOperator operator_from_json(const Json& value);

// {"k", "terminals", "beta": [[p, q, "w"], ...]}, p < q terminal vertex
// indices, zero weights omitted.
struct SparsifierFile {
  std::vector<std::size_t> terminals;
  Sparsifier beta;

  bool operator==(const SparsifierFile&) const = default;
};
Json to_json(const SparsifierFile& file);
SparsifierFile sparsifier_from_json(const Json& value);

// Cut witnesses list the side as terminal vertices; `terminals` maps
// positions to vertices.
Json to_json(const QualityReport& report, const std::vector<std::size_t>& terminals);
QualityReport report_from_json(const Json& value, const std::vector<std::size_t>& terminals);

// {"type": "cut", "graph", "mu1": [[[vertices], "p"], ...], "mu2": ...} or
// {"type": "metric", "graph", "metrics": [table, ...]}. On input "type" may be
// omitted; the kind is then detected from the keys present.
Json to_json(const CutCertificate& cert);
Json to_json(const MetricCertificate& cert);
using Certificate = std::variant<CutCertificate, MetricCertificate>;
Certificate certificate_from_json(const Json& value);

// Solve summary: status, Q, iteration and cut counts, worst metrics with
// their dual weights.
Json to_json(const OperatorSolveReport& report);

}  // namespace vsparse::io
