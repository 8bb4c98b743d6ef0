#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vsparse/certificates.hpp"
#include "vsparse/extension.hpp"
#include "vsparse/json_io.hpp"
#include "vsparse/maxflow.hpp"
#include "vsparse/operator.hpp"
#include "vsparse/quality.hpp"
#include "vsparse/random.hpp"

namespace vsparse::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

struct Config {
  std::uint64_t seed = 1;
  std::size_t max_iters = lp::CuttingPlaneLimits{}.max_iterations;
  std::uint64_t budget = kDefaultZeroExtensionBudget;
  std::size_t samples = 100;
  std::size_t demand_sets = 10;
  std::string semantics = "cut";
  std::string out;
  std::string graph_path;
  std::string sparsifier_path;
  std::string demands_path;
  std::string certificate_path;
  std::string mode = "all";
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Parses `path` with `read`, prefixing content diagnostics with the file name.
template <typename F>
auto load(const std::string& path, F&& read) {
  Json json = io::parse_text(read_file(path), path);
  try {
    return read(json);
  } catch (const io::ParseError& e) {
    throw io::ParseError(path + ": " + e.what());
  }
}

// Writes through a temporary file in the same directory and renames it into
// place, so readers never observe a partial file.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error(tmp.string() + ": write failed");
  }
  fs::rename(tmp, path);
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_atomic(path, content);
  }
}

std::string q_text(const std::optional<Rational>& q) { return q ? to_string(*q) : "unbounded"; }

std::string side_text(const WeightedGraph& g, std::uint64_t side) {
  std::string s = "{";
  bool first = true;
  for (std::size_t p = 0; p < g.terminal_count(); ++p) {
    if (((side >> p) & 1U) == 0) continue;
    if (!first) s += ",";
    s += std::to_string(g.terminal(p));
    first = false;
  }
  return s + "}";
}

std::vector<DemandSet> sample_demand_sets(Rng& rng, const WeightedGraph& g, std::size_t count) {
  std::vector<DemandSet> sets;
  if (g.terminal_count() < 2) return sets;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = rng.uniform(1, g.terminal_count());
    sets.push_back(random_demands(rng, g.terminals(), size));
  }
  return sets;
}

// --- sparsify --------------------------------------------------------------

int cmd_sparsify(const Config& cfg, std::ostream& out, std::ostream& err) {
  const WeightedGraph g = load(cfg.graph_path, io::graph_from_json);
  const std::vector<std::size_t> terminals(g.terminals().begin(), g.terminals().end());
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  fs::create_directories(dir);

  OperatorSolveOptions options;
  options.limits.max_iterations = cfg.max_iters;
  OperatorSolveReport solve = find_optimal_operator(g, options);
  out << "status: " << to_string(solve.status) << "\n";
  if (solve.status == OperatorSolveStatus::kMasterFailure) {
    err << "error: the master program failed; no operator was produced\n";
    return kNotConverged;
  }
  write_atomic(dir / "solve.json", io::dump(io::to_json(solve)));
  write_atomic(dir / "operator.json", io::dump(io::to_json(solve.op)));
  const Sparsifier beta = operator_to_sparsifier(solve.op, g);
  write_atomic(dir / "sparsifier.json", io::dump(io::to_json(io::SparsifierFile{terminals, beta})));
  out << "operator distortion Q: " << to_string(solve.op.distortion()) << " (" << solve.master_iterations
      << " master iterations)\n";

  Rng rng(cfg.seed);
  const QualityReport cut = cut_quality(g, beta);
  const QualityReport metric = metric_quality(g, beta, cfg.samples, rng);
  const auto demand_sets = sample_demand_sets(rng, g, cfg.demand_sets);
  QualityReport flow{.semantics = Semantics::kFlow, .q_value = Rational(0), .completeness = Completeness::kSampled};
  if (!demand_sets.empty()) flow = flow_quality_probe(g, beta, demand_sets).report;
  write_atomic(dir / "quality_cut.json", io::dump(io::to_json(cut, terminals)));
  write_atomic(dir / "quality_metric.json", io::dump(io::to_json(metric, terminals)));
  write_atomic(dir / "quality_flow.json", io::dump(io::to_json(flow, terminals)));
  out << "cut quality: " << q_text(cut.q_value) << "\n";
  out << "metric quality: " << q_text(metric.q_value) << "\n";
  out << "flow quality (" << demand_sets.size() << " demand sets): " << q_text(flow.q_value) << "\n";

  if (solve.converged && !solve.worst_metrics.empty()) {
    const MetricCertificate cert = harvest_certificate(solve, g);
    write_atomic(dir / "certificate.json", io::dump(io::to_json(cert)));
    const MetricCertification certified = certify_metric(cert);
    out << "certified Q: " << (certified.q ? to_string(*certified.q) : "invalid") << "\n";
  }

  if (!solve.converged) {
    err << "error: iteration limit reached before convergence\n";
    return kNotConverged;
  }
  if (cut.unbounded() || metric.unbounded() || flow.unbounded()) return kUnbounded;
  return kOk;
}

// --- quality ---------------------------------------------------------------

int cmd_quality(const Config& cfg, std::ostream& out, std::ostream& err) {
  const WeightedGraph g = load(cfg.graph_path, io::graph_from_json);
  const io::SparsifierFile file = load(cfg.sparsifier_path, io::sparsifier_from_json);
  if (!std::equal(file.terminals.begin(), file.terminals.end(), g.terminals().begin(), g.terminals().end())) {
    throw InputError(cfg.sparsifier_path + ": terminals do not match the graph's terminal list");
  }
  const std::vector<std::size_t> terminals(g.terminals().begin(), g.terminals().end());
  const Semantics semantics = parse_semantics(cfg.semantics);

  QualityReport report;
  Rng rng(cfg.seed);
  switch (semantics) {
    case Semantics::kCut:
      report = cut_quality(g, file.beta);
      break;
    case Semantics::kMetric:
      report = metric_quality(g, file.beta, cfg.samples, rng);
      break;
    case Semantics::kFlow: {
      if (cfg.demands_path.empty()) throw InputError("flow semantics needs --demands");
      const DemandSet demands = load(cfg.demands_path, io::demands_from_json);
      for (const Demand& d : demands.demands()) {
        if (!g.is_terminal(d.source) || !g.is_terminal(d.sink)) {
          throw InputError(cfg.demands_path + ": demand endpoints must be terminals");
        }
      }
      const std::vector<DemandSet> sets{demands};
      report = flow_quality_probe(g, file.beta, sets).report;
      break;
    }
  }
  emit(cfg.out, io::dump(io::to_json(report, terminals)), out);
  if (!cfg.out.empty() && cfg.out != "-") out << to_string(semantics) << " quality: " << q_text(report.q_value) << "\n";
  if (!report.lower_ok) err << "warning: the lower bound minext <= beta fails; see lower_violation\n";
  return report.unbounded() ? kUnbounded : kOk;
}

// --- certify ---------------------------------------------------------------

int cmd_certify(const Config& cfg, std::ostream& out, std::ostream&) {
  const io::Certificate cert = load(cfg.certificate_path, io::certificate_from_json);
  Json result;
  std::optional<Rational> q;
  std::string reason;
  if (const auto* cut = std::get_if<CutCertificate>(&cert)) {
    const CutCertification c = certify_cut(*cut);
    q = c.q;
    reason = c.invalid_reason;
    result = Json{{"type", "cut"}, {"q", c.q ? to_string(*c.q) : "invalid"}};
    if (c.scale) result["scale"] = to_string(*c.scale);
    result["expected_mincut_mu1"] = to_string(c.expected_mincut_mu1);
    result["expected_mincut_mu2"] = to_string(c.expected_mincut_mu2);
  } else {
    const MetricCertification c = certify_metric(std::get<MetricCertificate>(cert));
    q = c.q;
    reason = c.invalid_reason;
    result = Json{{"type", "metric"},
                  {"q", c.q ? to_string(*c.q) : "invalid"},
                  {"sum_of_extensions", to_string(c.sum_of_extensions)},
                  {"extension_of_sum", to_string(c.extension_of_sum)}};
  }
  if (!q) result["reason"] = reason;
  out << (q ? to_string(*q) : "invalid") << "\n";
  if (!cfg.out.empty()) write_atomic(cfg.out, io::dump(result));
  return kOk;
}

// --- oracle ----------------------------------------------------------------

struct OracleRow {
  std::string quantity;
  Rational lp;
  Rational oracle;
  bool equality;  // otherwise lp <= oracle is required
  bool ok() const { return equality ? lp == oracle : lp <= oracle; }
};

int cmd_oracle(const Config& cfg, std::ostream& out, std::ostream&) {
  const WeightedGraph g = load(cfg.graph_path, io::graph_from_json);
  if (cfg.mode != "all" && cfg.mode != "cuts" && cfg.mode != "zero-extension") {
    throw InputError("unknown oracle mode '" + cfg.mode + "' (expected cuts, zero-extension or all)");
  }
  const bool cuts = cfg.mode != "zero-extension";
  const bool zero = cfg.mode != "cuts";
  const std::size_t k = g.terminal_count();
  if (k > 20) throw BudgetExceeded("cut enumeration over more than 20 terminals");
  if (zero && zero_extension_count(g) > cfg.budget) {
    throw BudgetExceeded("0-extension enumeration needs " + std::to_string(zero_extension_count(g)) +
                         " maps, budget is " + std::to_string(cfg.budget));
  }

  MinExtensionSolver solver(g);
  std::vector<OracleRow> rows;
  const std::uint64_t sides = k >= 2 ? std::uint64_t{1} << (k - 1) : 1;
  for (std::uint64_t side = 1; side < sides; ++side) {
    const Metric d = cut_metric(side, k);
    const Rational lp = solver.value(d);
    const std::string name = "minext(delta" + side_text(g, side) + ")";
    if (cuts) rows.push_back({name + " vs max-flow", lp, contracted_min_cut(g, side), true});
    if (zero) rows.push_back({name + " vs best 0-extension", lp, best_zero_extension(g, d, cfg.budget).cost, true});
  }
  if (zero && k >= 2) {
    Rng rng(cfg.seed);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      const Metric d = random_metric(rng, k);
      rows.push_back({"minext(random #" + std::to_string(s) + ") vs best 0-extension", solver.value(d),
                      best_zero_extension(g, d, cfg.budget).cost, false});
    }
  }

  std::size_t width[3] = {8, 2, 6};
  for (const OracleRow& r : rows) {
    width[0] = std::max(width[0], r.quantity.size());
    width[1] = std::max(width[1], to_string(r.lp).size());
    width[2] = std::max(width[2], to_string(r.oracle).size());
  }
  auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& rel,
                  const std::string& ok) {
    out << std::left << std::setw(static_cast<int>(width[0])) << a << "  " << std::setw(static_cast<int>(width[1]))
        << b << "  " << std::setw(static_cast<int>(width[2])) << c << "  " << std::setw(8) << rel << "  " << ok
        << "\n";
  };
  line("quantity", "LP", "oracle", "relation", "ok");
  std::size_t failures = 0;
  for (const OracleRow& r : rows) {
    line(r.quantity, to_string(r.lp), to_string(r.oracle), r.equality ? "==" : "<=", r.ok() ? "yes" : "NO");
    if (!r.ok()) ++failures;
  }
  if (rows.empty()) out << "(no terminal bipartitions)\n";
  out << rows.size() << " rows, " << failures << " mismatches\n";
  return failures == 0 ? kOk : kOracleMismatch;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Vertex sparsifiers via optimal metric extension operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vsparse 0.1.0");

  auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", cfg.seed, "Seed for all sampling")->capture_default_str(); };
  auto add_samples = [&](CLI::App* cmd) {
    cmd->add_option("--samples", cfg.samples, "Random metrics for sampled checks")->capture_default_str();
  };

  CLI::App* sparsify = app.add_subcommand("sparsify", "Solve for the optimal operator and evaluate its sparsifier");
  sparsify->add_option("graph", cfg.graph_path, "Graph JSON")->required();
  sparsify->add_option("--out", cfg.out, "Output directory (default: current directory)");
  sparsify->add_option("--max-iters", cfg.max_iters, "Cutting-plane iteration cap")->capture_default_str();
  sparsify->add_option("--demand-sets", cfg.demand_sets, "Random demand sets for the flow probe")
      ->capture_default_str();
  add_seed(sparsify);
  add_samples(sparsify);

  CLI::App* quality = app.add_subcommand("quality", "Evaluate a sparsifier against a graph");
  quality->add_option("graph", cfg.graph_path, "Graph JSON")->required();
  quality->add_option("sparsifier", cfg.sparsifier_path, "Sparsifier JSON")->required();
  quality->add_option("--semantics", cfg.semantics, "cut, metric or flow")
      ->check(CLI::IsMember({"cut", "metric", "flow"}))
      ->capture_default_str();
  quality->add_option("--demands", cfg.demands_path, "Demand JSON (flow semantics)");
  quality->add_option("--out", cfg.out, "Report file (default: stdout)");
  add_seed(quality);
  add_samples(quality);

  CLI::App* certify = app.add_subcommand("certify", "Evaluate a cut or metric certificate");
  certify->add_option("certificate", cfg.certificate_path, "Certificate JSON")->required();
  certify->add_option("--out", cfg.out, "Result JSON file");

  CLI::App* oracle = app.add_subcommand("oracle", "Cross-check LP values against brute-force oracles");
  oracle->add_option("graph", cfg.graph_path, "Graph JSON")->required();
  oracle->add_option("--mode", cfg.mode, "cuts, zero-extension or all")->capture_default_str();
  oracle->add_option("--budget", cfg.budget, "Maximum number of 0-extensions to enumerate")->capture_default_str();
  add_seed(oracle);
  oracle->add_option("--samples", cfg.samples, "Random metrics compared against 0-extensions")
      ->default_val(10)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*sparsify) return cmd_sparsify(cfg, out, err);
    if (*quality) return cmd_quality(cfg, out, err);
    if (*certify) return cmd_certify(cfg, out, err);
    return cmd_oracle(cfg, out, err);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kParseError;
  } catch (const CertificateError& e) {
    err << "certificate error: " << e.what() << "\n";
    return kParseError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace vsparse::cli
