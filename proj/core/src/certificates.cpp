#include "vsparse/certificates.hpp"

#include <algorithm>

#include "vsparse/extension.hpp"

namespace vsparse {

namespace {

void validate(const CutDistribution& mu, std::size_t k, const char* name) {
  if (mu.empty()) throw CertificateError(std::string(name) + " is empty");
  const std::uint64_t full = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  Rational total;
  for (const auto& [side, p] : mu) {
    if ((side & ~full) != 0) throw CertificateError(std::string(name) + " names a terminal outside 0.." +
                                                    std::to_string(k - 1));
    if (is_negative(p)) throw CertificateError(std::string(name) + " has a negative probability");
    total += p;
  }
  if (total != 1) throw CertificateError(std::string(name) + " sums to " + to_string(total) + ", not 1");
}

// P[p in S, q not in S] for ordered pairs, row-major k x k.
std::vector<Rational> ordered_marginals(const CutDistribution& mu, std::size_t k) {
  std::vector<Rational> m(k * k);
  for (const auto& [side, prob] : mu) {
    if (is_zero(prob)) continue;
    for (std::size_t p = 0; p < k; ++p) {
      if (((side >> p) & 1U) == 0) continue;
      for (std::size_t q = 0; q < k; ++q) {
        if (((side >> q) & 1U) == 0) m[p * k + q] += prob;
      }
    }
  }
  return m;
}

Rational expected_mincut(MinExtensionSolver& solver, const CutDistribution& mu, std::size_t k) {
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  Rational total;
  for (const auto& [side, prob] : mu) {
    if (is_zero(prob) || side == 0 || side == full) continue;
    total += prob * terminal_min_cut(solver, side);
  }
  return total;
}

}  // namespace

CutCertification certify_cut(const CutCertificate& cert) {
  const std::size_t k = cert.graph.terminal_count();
  if (k > 63) throw CertificateError("cut certificates support at most 63 terminals");
  validate(cert.mu1, k, "mu1");
  validate(cert.mu2, k, "mu2");

  CutCertification out;
  const auto m1 = ordered_marginals(cert.mu1, k);
  const auto m2 = ordered_marginals(cert.mu2, k);
  Rational scale;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    if (is_zero(m1[i])) continue;
    if (is_zero(m2[i])) {
      out.invalid_reason = "terminal pair (" + std::to_string(i / k) + ", " + std::to_string(i % k) +
                           ") is separated by mu1 but never by mu2";
      return out;
    }
    scale = std::max(scale, Rational(m1[i] / m2[i]));
  }

  MinExtensionSolver solver(cert.graph);
  out.expected_mincut_mu1 = expected_mincut(solver, cert.mu1, k);
  out.expected_mincut_mu2 = expected_mincut(solver, cert.mu2, k);
  if (!is_positive(out.expected_mincut_mu1) || !is_positive(out.expected_mincut_mu2)) {
    out.invalid_reason = "expected minimum cut is zero";
    return out;
  }
  out.scale = scale;
  out.q = out.expected_mincut_mu1 / (scale * out.expected_mincut_mu2);
  return out;
}

MetricCertification certify_metric(const MetricCertificate& cert) {
  if (cert.metrics.empty()) throw CertificateError("metric family is empty");
  const std::size_t k = cert.graph.terminal_count();
  MinExtensionSolver solver(cert.graph);
  MetricCertification out;
  Metric sum = Metric::zero(k);
  for (const Metric& d : cert.metrics) {
    if (d.size() != k) {
      throw CertificateError("metric on " + std::to_string(d.size()) + " points, graph has " + std::to_string(k) +
                             " terminals");
    }
    out.sum_of_extensions += solver.value(d);
    sum = sum + d;
  }
  out.extension_of_sum = solver.value(sum);
  if (!is_positive(out.extension_of_sum)) {
    out.invalid_reason = "minimum extension of the summed metric is zero";
    return out;
  }
  out.q = out.sum_of_extensions / out.extension_of_sum;
  return out;
}

MetricCertificate harvest_certificate(const OperatorSolveReport& report, const WeightedGraph& g) {
  if (report.worst_metrics.empty()) throw CertificateError("solve report stores no worst metrics");
  const bool weighted = std::any_of(report.worst_metrics.begin(), report.worst_metrics.end(),
                                   [](const WorstMetric& w) { return is_positive(w.dual_weight); });
  MetricCertificate cert{g, {}};
  for (const WorstMetric& w : report.worst_metrics) {
    if (w.terminal_metric.size() != g.terminal_count()) throw CertificateError("worst metric does not match graph");
    if (!weighted) {
      cert.metrics.push_back(w.terminal_metric);
    } else if (is_positive(w.dual_weight)) {
      cert.metrics.push_back(scaled(w.terminal_metric, w.dual_weight));
    }
  }
  return cert;
}

}  // namespace vsparse
