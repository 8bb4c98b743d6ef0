#include <gtest/gtest.h>

#include "test_oracles.hpp"
#include "vsparse/certificates.hpp"
#include "vsparse/extension.hpp"
#include "vsparse/random.hpp"

namespace vsparse {
namespace {

using testing::q;

CutDistribution uniform_over(const std::vector<std::uint64_t>& masks) {
  CutDistribution mu;
  for (std::uint64_t m : masks) mu.emplace_back(m, q(1, static_cast<long>(masks.size())));
  return mu;
}

CutDistribution random_distribution(Rng& rng, std::size_t k) {
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  std::vector<Rational> weights(rng.uniform(1, 4));
  Rational total;
  for (auto& w : weights) {
    w = 1 + rng.rational(3, 2);
    total += w;
  }
  CutDistribution mu;
  for (const auto& w : weights) mu.emplace_back(rng.uniform(1, full - 1), w / total);
  return mu;
}

TEST(CertifyCutTest, IdenticalDistributionsGiveOne) {
  CutCertificate cert{testing::star_graph(3), uniform_over({0b001, 0b011}), uniform_over({0b001, 0b011})};
  CutCertification c = certify_cut(cert);
  ASSERT_TRUE(c.q.has_value()) << c.invalid_reason;
  EXPECT_EQ(*c.q, 1);
  EXPECT_EQ(*c.scale, 1);
  EXPECT_EQ(c.expected_mincut_mu1, 1);
}

// mu1 on the 2-2 splits through vertex 0, mu2 on singletons. The ordered pair
// (0,1) has P1 = 2/3 against P2 = 1/4, so c = 8/3 and Q = 2 / (8/3 * 1).
TEST(CertifyCutTest, FourStarSplitsAgainstSingletons) {
  CutCertificate cert{testing::star_graph(4), uniform_over({0b0011, 0b0101, 0b1001}),
                      uniform_over({0b0001, 0b0010, 0b0100, 0b1000})};
  CutCertification c = certify_cut(cert);
  ASSERT_TRUE(c.q.has_value());
  EXPECT_EQ(*c.scale, q(8, 3));
  EXPECT_EQ(c.expected_mincut_mu1, 2);
  EXPECT_EQ(c.expected_mincut_mu2, 1);
  EXPECT_EQ(*c.q, q(3, 4));
}

TEST(CertifyCutTest, UnsupportedPairIsInvalid) {
  CutCertificate cert{testing::star_graph(3), uniform_over({0b010}), uniform_over({0b001})};
  CutCertification c = certify_cut(cert);
  EXPECT_FALSE(c.q.has_value());
  EXPECT_FALSE(c.invalid_reason.empty());
}

TEST(CertifyCutTest, RejectsMalformedDistributions) {
  WeightedGraph g = testing::star_graph(3);
  EXPECT_THROW(certify_cut({g, {{0b001, q(1, 2)}}, uniform_over({0b001})}), CertificateError);
  EXPECT_THROW(certify_cut({g, {{0b001, q(3, 2)}, {0b010, q(-1, 2)}}, uniform_over({0b001})}), CertificateError);
  EXPECT_THROW(certify_cut({g, uniform_over({0b1000}), uniform_over({0b001})}), CertificateError);
}

// Complementing every atom swaps the two orders of each pair in both
// distributions and leaves every min cut unchanged.
TEST(CertifyCutTest, ComplementInvariance) {
  Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = rng.uniform(2, 4);
    WeightedGraph g = random_graph(rng, {.n = rng.uniform(k, 6), .k = k, .connected = true});
    CutCertificate cert{g, random_distribution(rng, k), random_distribution(rng, k)};
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    CutCertificate flipped = cert;
    for (auto& [mask, p] : flipped.mu1) mask = full & ~mask;
    for (auto& [mask, p] : flipped.mu2) mask = full & ~mask;
    CutCertification a = certify_cut(cert);
    CutCertification b = certify_cut(flipped);
    EXPECT_EQ(a.q, b.q);
    EXPECT_EQ(a.expected_mincut_mu1, b.expected_mincut_mu1);
  }
}

// Any cut certificate lower-bounds the cut quality of every sparsifier whose
// cut values dominate the min cuts; the min-cut sparsifier on two terminals
// has quality 1.
TEST(CertifyCutTest, NeverExceedsOneOnTwoTerminals) {
  Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    WeightedGraph g = random_graph(rng, {.n = rng.uniform(2, 5), .k = 2, .connected = true});
    CutCertificate cert{g, random_distribution(rng, 2), random_distribution(rng, 2)};
    CutCertification c = certify_cut(cert);
    if (c.q) EXPECT_LE(*c.q, 1);
  }
}

TEST(CertifyMetricTest, SingleMetricGivesOne) {
  Rng rng(53);
  WeightedGraph g = random_graph(rng, {.n = 5, .k = 3, .connected = true});
  MetricCertification c = certify_metric({g, {random_metric(rng, 3)}});
  EXPECT_EQ(c.q, Rational(1));
}

// minext of a 2-2 split metric on the unit 4-star is 2; their sum is 2 on every
// pair, whose min extension puts the center at distance 1 from each leaf: 4.
TEST(CertifyMetricTest, FourStarSplitsGiveThreeHalves) {
  MetricCertificate cert{testing::star_graph(4), {cut_metric(0b0011, 4), cut_metric(0b0101, 4), cut_metric(0b1001, 4)}};
  MetricCertification c = certify_metric(cert);
  EXPECT_EQ(c.sum_of_extensions, 6);
  EXPECT_EQ(c.extension_of_sum, 4);
  EXPECT_EQ(c.q, q(3, 2));
}

TEST(CertifyMetricTest, ZeroFamilyHasNoValue) {
  MetricCertification c = certify_metric({testing::star_graph(3), {Metric::zero(3)}});
  EXPECT_FALSE(c.q.has_value());
  EXPECT_FALSE(c.invalid_reason.empty());
}

TEST(CertifyMetricTest, RejectsMalformedFamilies) {
  EXPECT_THROW(certify_metric({testing::star_graph(3), {}}), CertificateError);
  EXPECT_THROW(certify_metric({testing::star_graph(3), {Metric::zero(4)}}), CertificateError);
}

TEST(CertifyMetricTest, ScaleAndOrderInvariantAndAtLeastOne) {
  Rng rng(54);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = rng.uniform(2, 4);
    WeightedGraph g = random_graph(rng, {.n = rng.uniform(k, 6), .k = k, .connected = true});
    std::vector<Metric> family;
    for (std::size_t i = 0, count = rng.uniform(1, 4); i < count; ++i) family.push_back(random_metric(rng, k));
    MetricCertification c = certify_metric({g, family});
    if (!c.q) continue;
    // Convexity of minext.
    EXPECT_GE(*c.q, 1);

    const Rational factor = 1 + rng.rational(4, 3);
    std::vector<Metric> scaled_family;
    for (const Metric& d : family) scaled_family.push_back(scaled(d, factor));
    EXPECT_EQ(certify_metric({g, scaled_family}).q, c.q);

    std::vector<Metric> reversed(family.rbegin(), family.rend());
    EXPECT_EQ(certify_metric({g, reversed}).q, c.q);
  }
}

TEST(HarvestTest, RequiresWorstMetrics) {
  OperatorSolveReport empty;
  EXPECT_THROW(harvest_certificate(empty, testing::star_graph(3)), CertificateError);
}

// A harvested family certifies a value between 1 and the operator's distortion
// and only contains the report's binding metrics, rescaled.
TEST(HarvestTest, SoundOnSolvedInstances) {
  Rng rng(55);
  std::vector<WeightedGraph> graphs{testing::star_graph(3), testing::star_graph(4), testing::path_graph()};
  for (int i = 0; i < 6; ++i) graphs.push_back(random_graph(rng, {.n = 5, .k = 3, .connected = true}));
  for (const WeightedGraph& g : graphs) {
    OperatorSolveReport report = find_optimal_operator(g);
    ASSERT_TRUE(report.converged);
    MetricCertificate cert = harvest_certificate(report, g);
    ASSERT_FALSE(cert.metrics.empty());
    EXPECT_LE(cert.metrics.size(), report.worst_metrics.size());
    MetricCertification c = certify_metric(cert);
    ASSERT_TRUE(c.q.has_value());
    EXPECT_GE(*c.q, 1);
    EXPECT_LE(*c.q, report.op.distortion());
  }
}

}  // namespace
}  // namespace vsparse
