#include "vsparse/json_io.hpp"

#include <algorithm>

#include "vsparse/pairs.hpp"

namespace vsparse::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path.empty() ? "document" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

std::size_t get_index(const Json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(path, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Rational get_rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(path, "expected a rational string \"num/den\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

const Json& get_array(const Json& v, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!v.is_array()) fail(path, "expected an array");
  if (size && v.size() != *size) fail(path, "expected " + std::to_string(*size) + " entries, got " +
                                                std::to_string(v.size()));
  return v;
}

std::vector<std::size_t> get_indices(const Json& v, const std::string& path) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < get_array(v, path).size(); ++i) out.push_back(get_index(v[i], child(path, i)));
  return out;
}

// Rethrows library validation failures with the location attached.
template <typename F>
auto checked(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

std::size_t position_of(const std::vector<std::size_t>& terminals, std::size_t v, const std::string& path) {
  auto it = std::find(terminals.begin(), terminals.end(), v);
  if (it == terminals.end()) fail(path, "vertex " + std::to_string(v) + " is not a terminal");
  return static_cast<std::size_t>(it - terminals.begin());
}

Json side_vertices(std::uint64_t side, const std::vector<std::size_t>& terminals) {
  Json out = Json::array();
  for (std::size_t p = 0; p < terminals.size(); ++p) {
    if ((side >> p) & 1U) out.push_back(terminals[p]);
  }
  return out;
}

std::uint64_t side_mask(const Json& v, const std::vector<std::size_t>& terminals, const std::string& path) {
  std::uint64_t mask = 0;
  const auto vertices = get_indices(v, path);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::size_t p = position_of(terminals, vertices[i], child(path, i));
    if (p >= 64) fail(child(path, i), "terminal position exceeds 63");
    mask |= std::uint64_t{1} << p;
  }
  return mask;
}

std::string rational_or_unbounded(const std::optional<Rational>& q) { return q ? to_string(*q) : "unbounded"; }

Json witness_json(const QualityWitness& w, const std::vector<std::size_t>& terminals) {
  return std::visit(
      [&](const auto& x) -> Json {
        using W = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<W, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<W, CutWitness>) {
          return Json{{"kind", "cut"},
                      {"side", side_vertices(x.side, terminals)},
                      {"sparsifier_value", to_string(x.sparsifier_value)},
                      {"min_cut", to_string(x.min_cut)}};
        } else if constexpr (std::is_same_v<W, MetricWitness>) {
          return Json{{"kind", "metric"},
                      {"metric", to_json(x.terminal_metric)},
                      {"sparsifier_value", to_string(x.sparsifier_value)},
                      {"min_extension", to_string(x.min_extension)}};
        } else {
          return Json{{"kind", "demands"},
                      {"demands", to_json(x.demands)["demands"]},
                      {"graph_flow", to_string(x.graph_flow)},
                      {"sparsifier_flow", to_string(x.sparsifier_flow)}};
        }
      },
      w);
}

QualityWitness witness_from_json(const Json& v, const std::vector<std::size_t>& terminals, const std::string& path) {
  if (v.is_null()) return std::monostate{};
  const Json& kind = field(v, "kind", path);
  if (!kind.is_string()) fail(child(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "cut") {
    return CutWitness{side_mask(field(v, "side", path), terminals, child(path, "side")),
                      get_rational(field(v, "sparsifier_value", path), child(path, "sparsifier_value")),
                      get_rational(field(v, "min_cut", path), child(path, "min_cut"))};
  }
  if (k == "metric") {
    return MetricWitness{metric_from_json(field(v, "metric", path), child(path, "metric")),
                         get_rational(field(v, "sparsifier_value", path), child(path, "sparsifier_value")),
                         get_rational(field(v, "min_extension", path), child(path, "min_extension"))};
  }
  if (k == "demands") {
    Json wrapped{{"demands", field(v, "demands", path)}};
    return DemandWitness{checked(child(path, "demands"), [&] { return demands_from_json(wrapped); }),
                         get_rational(field(v, "graph_flow", path), child(path, "graph_flow")),
                         get_rational(field(v, "sparsifier_flow", path), child(path, "sparsifier_flow"))};
  }
  fail(child(path, "kind"), "unknown witness kind '" + k + "'");
}

CutDistribution distribution_from_json(const Json& v, const std::vector<std::size_t>& terminals,
                                       const std::string& path) {
  CutDistribution mu;
  for (std::size_t i = 0; i < get_array(v, path).size(); ++i) {
    const std::string at = child(path, i);
    const Json& atom = get_array(v[i], at, 2);
    mu.emplace_back(side_mask(atom[0], terminals, child(at, 0)), get_rational(atom[1], child(at, 1)));
  }
  return mu;
}

Json distribution_json(const CutDistribution& mu, const std::vector<std::size_t>& terminals) {
  Json out = Json::array();
  for (const auto& [side, p] : mu) out.push_back(Json::array({side_vertices(side, terminals), to_string(p)}));
  return out;
}

std::vector<std::size_t> terminal_list(const WeightedGraph& g) { return {g.terminals().begin(), g.terminals().end()}; }

}  // namespace

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ": line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": invalid JSON");
  }
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

// --- graph -----------------------------------------------------------------

Json to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v, to_string(e.weight)}));
  return Json{{"n", g.vertex_count()}, {"terminals", terminal_list(g)}, {"edges", std::move(edges)}};
}

WeightedGraph graph_from_json(const Json& value) {
  const std::size_t n = get_index(field(value, "n", ""), "n");
  auto terminals = get_indices(field(value, "terminals", ""), "terminals");
  const Json& edges_json = get_array(field(value, "edges", ""), "edges");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edges_json.size(); ++i) {
    const std::string path = child("edges", i);
    const Json& e = get_array(edges_json[i], path, 3);
    edges.push_back({get_index(e[0], child(path, 0)), get_index(e[1], child(path, 1)),
                     get_rational(e[2], child(path, 2))});
  }
  return checked("graph", [&] { return WeightedGraph(n, std::move(terminals), edges); });
}

// --- demands ---------------------------------------------------------------

Json to_json(const DemandSet& demands) {
  Json list = Json::array();
  for (const Demand& d : demands.demands()) list.push_back(Json::array({d.source, d.sink, to_string(d.amount)}));
  return Json{{"demands", std::move(list)}};
}

DemandSet demands_from_json(const Json& value) {
  const Json& list = get_array(field(value, "demands", ""), "demands");
  std::vector<Demand> demands;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = child("demands", i);
    const Json& d = get_array(list[i], path, 3);
    demands.push_back({get_index(d[0], child(path, 0)), get_index(d[1], child(path, 1)),
                       get_rational(d[2], child(path, 2))});
  }
  return checked("demands", [&] { return DemandSet(std::move(demands)); });
}

// --- metric ----------------------------------------------------------------

Json to_json(const Metric& d) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d.size(); ++j) row.push_back(to_string(d(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Metric metric_from_json(const Json& value, const std::string& path) {
  const Json& rows = get_array(value, path);
  DistanceMatrix table(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& row = get_array(rows[i], child(path, i), rows.size());
    for (std::size_t j = 0; j < row.size(); ++j) table[i].push_back(get_rational(row[j], child(child(path, i), j)));
  }
  auto result = validate_metric(table);
  if (auto* violation = std::get_if<MetricViolation>(&result)) fail(path, violation->describe());
  return std::get<Metric>(std::move(result));
}

// --- operator --------------------------------------------------------------

Json to_json(const ExtensionOperator& phi) {
  const std::size_t n = phi.vertex_count();
  const std::size_t k = phi.terminal_count();
  const auto terminals = phi.terminals();
  Json coeffs = Json::array();
  for (std::size_t e = 0; e < phi.table().size(); ++e) {
    auto [i, j] = pair_at(e, n);
    for (std::size_t t = 0; t < pair_count(k); ++t) {
      const Rational& v = phi.table()[e][t];
      if (is_zero(v)) continue;
      auto [a, b] = pair_at(t, k);
      const std::size_t p = std::min(terminals[a], terminals[b]);
      const std::size_t q = std::max(terminals[a], terminals[b]);
      coeffs.push_back(Json::array({i, j, p, q, to_string(v)}));
    }
  }
  return Json{{"n", n},
              {"k", k},
              {"terminals", std::vector<std::size_t>(terminals.begin(), terminals.end())},
              {"Q", to_string(phi.distortion())},
              {"coeffs", std::move(coeffs)}};
}

ExtensionOperator operator_from_json(const Json& value) {
  const std::size_t n = get_index(field(value, "n", ""), "n");
  const std::size_t k = get_index(field(value, "k", ""), "k");
  auto terminals = get_indices(field(value, "terminals", ""), "terminals");
  if (terminals.size() != k) fail("terminals", "expected k = " + std::to_string(k) + " entries");
  for (std::size_t i = 0; i < k; ++i) {
    if (terminals[i] >= n) fail(child("terminals", i), "vertex out of range");
  }
  Rational q = get_rational(field(value, "Q", ""), "Q");
  OperatorTable table(pair_count(n), std::vector<Rational>(pair_count(k)));
  std::vector<std::vector<bool>> seen(table.size(), std::vector<bool>(pair_count(k)));
  const Json& coeffs = get_array(field(value, "coeffs", ""), "coeffs");
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    const std::string path = child("coeffs", r);
    const Json& c = get_array(coeffs[r], path, 5);
    const std::size_t i = get_index(c[0], child(path, 0));
    const std::size_t j = get_index(c[1], child(path, 1));
    const std::size_t p = get_index(c[2], child(path, 2));
    const std::size_t qv = get_index(c[3], child(path, 3));
    if (i >= j || j >= n) fail(path, "vertex pair must satisfy i < j < n");
    if (p >= qv) fail(path, "terminal pair must satisfy p < q");
    const std::size_t a = position_of(terminals, p, child(path, 2));
    const std::size_t b = position_of(terminals, qv, child(path, 3));
    const std::size_t e = pair_index(i, j, n);
    const std::size_t t = pair_index(a, b, k);
    if (seen[e][t]) fail(path, "duplicate coefficient");
    seen[e][t] = true;
    table[e][t] = get_rational(c[4], child(path, 4));
  }
  return checked("operator", [&] { return ExtensionOperator(n, std::move(terminals), std::move(table), q); });
}

// --- sparsifier ------------------------------------------------------------

Json to_json(const SparsifierFile& file) {
  const std::size_t k = file.beta.terminal_count();
  Json beta = Json::array();
  for (std::size_t t = 0; t < pair_count(k); ++t) {
    const Rational& w = file.beta.pair_weights()[t];
    if (is_zero(w)) continue;
    auto [a, b] = pair_at(t, k);
    beta.push_back(Json::array({std::min(file.terminals[a], file.terminals[b]),
                                std::max(file.terminals[a], file.terminals[b]), to_string(w)}));
  }
  return Json{{"k", k}, {"terminals", file.terminals}, {"beta", std::move(beta)}};
}

SparsifierFile sparsifier_from_json(const Json& value) {
  const std::size_t k = get_index(field(value, "k", ""), "k");
  auto terminals = get_indices(field(value, "terminals", ""), "terminals");
  if (terminals.size() != k) fail("terminals", "expected k = " + std::to_string(k) + " entries");
  std::vector<std::size_t> sorted = terminals;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("terminals", "duplicate terminal");
  std::vector<Rational> weights(pair_count(k));
  std::vector<bool> seen(weights.size());
  const Json& beta = get_array(field(value, "beta", ""), "beta");
  for (std::size_t r = 0; r < beta.size(); ++r) {
    const std::string path = child("beta", r);
    const Json& w = get_array(beta[r], path, 3);
    const std::size_t a = position_of(terminals, get_index(w[0], child(path, 0)), child(path, 0));
    const std::size_t b = position_of(terminals, get_index(w[1], child(path, 1)), child(path, 1));
    if (a == b) fail(path, "terminal pair must be distinct");
    const std::size_t t = pair_index(std::min(a, b), std::max(a, b), k);
    if (seen[t]) fail(path, "duplicate pair");
    seen[t] = true;
    weights[t] = get_rational(w[2], child(path, 2));
  }
  Sparsifier s = checked("beta", [&] { return Sparsifier(k, std::move(weights)); });
  return {std::move(terminals), std::move(s)};
}

// --- quality report --------------------------------------------------------

Json to_json(const QualityReport& report, const std::vector<std::size_t>& terminals) {
  return Json{{"semantics", to_string(report.semantics)},
              {"q_value", rational_or_unbounded(report.q_value)},
              {"lower_ok", report.lower_ok},
              {"completeness", to_string(report.completeness)},
              {"witness", witness_json(report.witness, terminals)},
              {"lower_violation", witness_json(report.lower_violation, terminals)}};
}

QualityReport report_from_json(const Json& value, const std::vector<std::size_t>& terminals) {
  QualityReport report;
  const Json& semantics = field(value, "semantics", "");
  if (!semantics.is_string()) fail("semantics", "expected a string");
  report.semantics = checked("semantics", [&] { return parse_semantics(semantics.get<std::string>()); });
  const Json& q = field(value, "q_value", "");
  if (q.is_string() && q.get<std::string>() == "unbounded") {
    report.q_value.reset();
  } else {
    report.q_value = get_rational(q, "q_value");
  }
  const Json& lower = field(value, "lower_ok", "");
  if (!lower.is_boolean()) fail("lower_ok", "expected a boolean");
  report.lower_ok = lower.get<bool>();
  const Json& completeness = field(value, "completeness", "");
  const std::string c = completeness.is_string() ? completeness.get<std::string>() : "";
  if (c == "exact") {
    report.completeness = Completeness::kExact;
  } else if (c == "sampled") {
    report.completeness = Completeness::kSampled;
  } else if (c == "unchecked") {
    report.completeness = Completeness::kUnchecked;
  } else {
    fail("completeness", "expected exact, sampled or unchecked");
  }
  report.witness = witness_from_json(field(value, "witness", ""), terminals, "witness");
  report.lower_violation = witness_from_json(field(value, "lower_violation", ""), terminals, "lower_violation");
  return report;
}

// --- certificates ----------------------------------------------------------

Json to_json(const CutCertificate& cert) {
  const auto terminals = terminal_list(cert.graph);
  return Json{{"type", "cut"},
              {"graph", to_json(cert.graph)},
              {"mu1", distribution_json(cert.mu1, terminals)},
              {"mu2", distribution_json(cert.mu2, terminals)}};
}

Json to_json(const MetricCertificate& cert) {
  Json metrics = Json::array();
  for (const Metric& d : cert.metrics) metrics.push_back(to_json(d));
  return Json{{"type", "metric"}, {"graph", to_json(cert.graph)}, {"metrics", std::move(metrics)}};
}

Certificate certificate_from_json(const Json& value) {
  if (!value.is_object()) fail("document", "expected an object");
  std::string type;
  if (auto it = value.find("type"); it != value.end()) {
    if (!it->is_string()) fail("type", "expected a string");
    type = it->get<std::string>();
  } else if (value.contains("mu1") || value.contains("mu2")) {
    type = "cut";
  } else if (value.contains("metrics")) {
    type = "metric";
  } else {
    fail("document", "cannot tell the certificate kind: expected mu1/mu2 or metrics");
  }
  const Json& graph_json = field(value, "graph", "");
  WeightedGraph g = [&] {
    try {
      return graph_from_json(graph_json);
    } catch (const ParseError& e) {
      throw ParseError(std::string("graph.") + e.what());
    }
  }();
  const auto terminals = terminal_list(g);
  if (type == "cut") {
    CutCertificate cert{g, distribution_from_json(field(value, "mu1", ""), terminals, "mu1"),
                        distribution_from_json(field(value, "mu2", ""), terminals, "mu2")};
    return cert;
  }
  if (type == "metric") {
    const Json& list = get_array(field(value, "metrics", ""), "metrics");
    MetricCertificate cert{g, {}};
    for (std::size_t i = 0; i < list.size(); ++i) cert.metrics.push_back(metric_from_json(list[i], child("metrics", i)));
    return cert;
  }
  fail("type", "unknown certificate type '" + type + "'");
}

// --- solve report ----------------------------------------------------------

Json to_json(const OperatorSolveReport& report) {
  Json worst = Json::array();
  for (const WorstMetric& w : report.worst_metrics) {
    worst.push_back(Json{{"metric", to_json(w.terminal_metric)},
                         {"min_extension", to_string(w.min_extension)},
                         {"dual_weight", to_string(w.dual_weight)}});
  }
  return Json{{"status", to_string(report.status)},
              {"converged", report.converged},
              {"Q", to_string(report.op.distortion())},
              {"master_iterations", report.master_iterations},
              {"cuts", Json{{"seed", report.seed_cuts},
                            {"membership", report.membership_cuts},
                            {"distortion", report.distortion_cuts}}},
              {"worst_metrics", std::move(worst)}};
}

}  // namespace vsparse::io
