#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vsparse/graph.hpp"
#include "vsparse/metric.hpp"
#include "vsparse/operator.hpp"

namespace vsparse {

// Finite distribution over terminal subsets, as (bitmask over terminal
// positions, probability) atoms.
using CutDistribution = std::vector<std::pair<std::uint64_t, Rational>>;

struct CutCertificate {
  WeightedGraph graph;
  CutDistribution mu1;
  CutDistribution mu2;

  bool operator==(const CutCertificate&) const = default;
};

struct MetricCertificate {
  WeightedGraph graph;
  std::vector<Metric> metrics;  // metrics on the terminals

  bool operator==(const MetricCertificate&) const = default;
};

class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CutCertification {
  std::optional<Rational> q;  // nullopt when the certificate is invalid
  std::string invalid_reason;
  // Smallest c with P1[p in S, q not in S] <= c P2[p in S, q not in S] for
  // every ordered terminal pair.
  std::optional<Rational> scale;
  Rational expected_mincut_mu1;
  Rational expected_mincut_mu2;
};

struct MetricCertification {
  std::optional<Rational> q;  // nullopt when minext of the sum is 0
  std::string invalid_reason;
  Rational sum_of_extensions;  // sum_i minext(d_i)
  Rational extension_of_sum;   // minext(sum_i d_i)
};

// Throws CertificateError for a negative probability, a distribution that does
// not sum to 1, or a mask naming a nonexistent terminal.
CutCertification certify_cut(const CutCertificate& cert);

// Throws CertificateError for an empty family or a metric of the wrong size.
MetricCertification certify_metric(const MetricCertificate& cert);

// Family of the report's binding worst metrics, each scaled by its master
// dual weight (metrics with weight 0 are dropped; unscaled when every weight
// is 0). Throws CertificateError when the report stores none.
MetricCertificate harvest_certificate(const OperatorSolveReport& report, const WeightedGraph& g);

}  // namespace vsparse
