#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netimmune/lfr.hpp"
#include "test_support.hpp"

namespace netimmune {
namespace {

LfrParams scaled(std::size_t n, double mu, std::uint64_t seed) {
  LfrParams p;
  p.n = n;
  p.k_max = 180 * n / 7500;
  p.c_max = 180 * n / 7500;
  p.mu = mu;
  p.seed = seed;
  return p;
}

std::vector<std::size_t> degrees_of(const Graph& g) {
  std::vector<std::size_t> d(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) d[v] = g.degree(v);
  return d;
}

TEST(LfrParams, Validation) {
  LfrParams p;
  EXPECT_NO_THROW(p.validate_for_generation());
  p.c_max = p.n + 1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = LfrParams{};
  p.gamma = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = LfrParams{};
  p.mu = 0.99;  // above (7500 - 180) / 7500
  EXPECT_NO_THROW(p.validate());
  EXPECT_THROW(p.validate_for_generation(), std::invalid_argument);
}

TEST(PowerLawDegrees, TableDefaultsHitTheMean) {
  LfrParams p;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    p.seed = seed;
    const auto d = sample_power_law_degrees(p);
    ASSERT_EQ(d.size(), 7500u);
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / 7500.0;
    EXPECT_GE(mean, 9.5);
    EXPECT_LE(mean, 10.5);
    EXPECT_LE(*std::max_element(d.begin(), d.end()), 180u);
    EXPECT_GE(*std::min_element(d.begin(), d.end()), 1u);
    EXPECT_EQ(std::accumulate(d.begin(), d.end(), std::size_t{0}) % 2, 0u);
  }
}

TEST(PowerLawDegrees, DegenerateSupportIsAllOnes) {
  LfrParams p;
  p.n = 7;
  p.k_max = 1;
  p.k_avg = 1.0;
  p.c_min = 1;
  p.c_max = 7;
  const auto d = sample_power_law_degrees(p);
  // Odd count of ones cannot be made even by incrementing past k_max, so one entry drops to 0.
  EXPECT_EQ(std::count(d.begin(), d.end(), 1u), 6);
  EXPECT_EQ(std::accumulate(d.begin(), d.end(), std::size_t{0}) % 2, 0u);
  p.n = 8;
  p.c_max = 8;
  const auto e = sample_power_law_degrees(p);
  EXPECT_TRUE(std::all_of(e.begin(), e.end(), [](std::size_t k) { return k == 1; }));
}

TEST(PowerLawDegrees, UnreachableMeanThrows) {
  LfrParams p;
  p.k_avg = 200.0;
  EXPECT_ANY_THROW(sample_power_law_degrees(p));
}

TEST(ConfigurationModel, ForcedRealizations) {
  const std::size_t pair[] = {1, 1};
  const auto a = configuration_model(pair, 1);
  EXPECT_EQ(a.edge_count(), 1u);
  const std::size_t tri[] = {2, 2, 2};
  const auto b = configuration_model(tri, 1);
  EXPECT_EQ(b.edge_count(), 3u);
  for (NodeId v = 0; v < 3; ++v) EXPECT_EQ(b.degree(v), 2u);
}

TEST(ConfigurationModel, OddSumThrows) {
  const std::size_t odd[] = {1, 2};
  EXPECT_THROW(configuration_model(odd, 1), std::invalid_argument);
}

TEST(ConfigurationModel, TableSequenceIsSimpleAndNearlyExact) {
  LfrParams p;
  p.seed = 3;
  const auto d = sample_power_law_degrees(p);
  ConfigurationModelReport report;
  const auto g = configuration_model(d, 9, &report);
  std::size_t exact = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    EXPECT_LE(g.degree(v), d[v]);
    exact += g.degree(v) == d[v] ? 1 : 0;
    auto nbrs = g.neighbors(v);
    EXPECT_TRUE(std::find(nbrs.begin(), nbrs.end(), v) == nbrs.end());
  }
  EXPECT_GE(static_cast<double>(exact), 0.99 * static_cast<double>(g.node_count()));
  const std::size_t requested = std::accumulate(d.begin(), d.end(), std::size_t{0});
  EXPECT_EQ(2 * g.edge_count() + report.dropped_stubs, requested);
}

TEST(CommunitySizes, Forced) {
  LfrParams p;
  p.n = 20;
  p.c_min = 5;
  p.c_max = 5;
  p.k_max = 4;
  p.k_avg = 2;
  EXPECT_EQ(sample_community_sizes(p), (std::vector<std::size_t>{5, 5, 5, 5}));
  p.n = 5;
  EXPECT_EQ(sample_community_sizes(p), (std::vector<std::size_t>{5}));
}

TEST(CommunitySizes, TableBoundsAndSum) {
  LfrParams p;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    p.seed = seed;
    const auto s = sample_community_sizes(p);
    EXPECT_EQ(std::accumulate(s.begin(), s.end(), std::size_t{0}), 7500u);
    for (auto c : s) {
      EXPECT_GE(c, 5u);
      EXPECT_LE(c, 180u);
    }
  }
}

TEST(CommunitySizes, ImpossibleBoundsThrow) {
  LfrParams p;
  p.n = 12;
  p.c_min = 5;
  p.c_max = 5;
  p.k_max = 4;
  p.k_avg = 2;
  EXPECT_THROW(sample_community_sizes(p), GenerationError);
}

TEST(Assignment, InternalDegreeTarget) {
  EXPECT_EQ(internal_degree_target(4, 0.5), 2u);
  EXPECT_EQ(internal_degree_target(4, 0.0), 4u);
  EXPECT_EQ(internal_degree_target(10, 0.2), 8u);
  EXPECT_EQ(internal_degree_target(3, 0.5), 2u);
}

TEST(Assignment, RespectsSizesAndEligibility) {
  auto rng = make_rng(1);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::size_t> sizes = {3, 5, 8, 4};
    std::vector<std::size_t> degrees;
    for (std::size_t i = 0; i < 20; ++i) degrees.push_back(1 + uniform_index(rng, 6));
    const double mu = 0.1 * static_cast<double>(uniform_index(rng, 6));
    const auto p = assign_nodes_to_communities(degrees, sizes, mu, round);
    ASSERT_EQ(p.community_count(), 4u);
    // Community ids follow first-seen node order, so compare size multisets.
    std::vector<std::size_t> got;
    for (CommunityId c = 0; c < 4; ++c) got.push_back(p.members(c).size());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, (std::vector<std::size_t>{3, 4, 5, 8}));
    for (NodeId v = 0; v < 20; ++v) {
      EXPECT_GE(p.members(p.community_of(v)).size(), internal_degree_target(degrees[v], mu));
    }
  }
}

TEST(Assignment, AllDegreeOneIsAlwaysPlaceable) {
  const std::vector<std::size_t> degrees(12, 1);
  const std::vector<std::size_t> sizes = {2, 4, 6};
  const auto p = assign_nodes_to_communities(degrees, sizes, 0.0, 4);
  ASSERT_EQ(p.community_count(), 3u);
  std::size_t total = 0;
  for (CommunityId c = 0; c < 3; ++c) total += p.members(c).size();
  EXPECT_EQ(total, 12u);
}

TEST(Assignment, NoEligibleCommunityThrows) {
  const std::vector<std::size_t> degrees = {6, 1, 1, 1};
  const std::vector<std::size_t> sizes = {2, 2};
  EXPECT_THROW(assign_nodes_to_communities(degrees, sizes, 0.0, 1), GenerationError);
}

TEST(Rewire, AlreadyAtTargetIsIdentity) {
  const auto g = testing::bridged_triangles();
  const auto p = testing::partition_of({0, 0, 0, 1, 1, 1});
  RewireReport report;
  const auto h = rewire_to_mixing(g, p, 2.0 / 14.0, 0.01, 1, &report);
  EXPECT_EQ(report.swaps, 0u);
  EXPECT_EQ(h.edges(), g.edges());
}

TEST(Rewire, PreservesEveryDegreeAndMovesTowardTarget) {
  auto rng = make_rng(3);
  for (int round = 0; round < 20; ++round) {
    const auto g = testing::random_graph(80, 0.1, rng);
    const auto p = testing::random_partition(80, 4, rng);
    const double target = 0.1 * static_cast<double>(uniform_index(rng, 8));
    RewireReport report;
    const auto h = rewire_to_mixing(g, p, target, 0.01, round, &report);
    EXPECT_EQ(degrees_of(h), degrees_of(g));
    EXPECT_EQ(h.edge_count(), g.edge_count());
    EXPECT_LE(std::abs(report.final_mixing - target), std::abs(report.initial_mixing - target));
    EXPECT_DOUBLE_EQ(report.final_mixing, global_mixing(h, p));
  }
}

class LfrScaled : public ::testing::TestWithParam<double> {};

TEST_P(LfrScaled, ThousandNodeNetwork) {
  const double mu = GetParam();
  const auto p = scaled(1000, mu, 17);
  const auto net = generate_lfr(p);
  const auto& g = net.graph;
  EXPECT_EQ(g.node_count(), 1000u);
  EXPECT_NEAR(global_mixing(g, net.partition), mu, 0.03);
  EXPECT_DOUBLE_EQ(net.realized_mixing, global_mixing(g, net.partition));
  std::size_t total = 0;
  for (CommunityId c = 0; c < net.partition.community_count(); ++c) {
    const auto size = net.partition.members(c).size();
    EXPECT_GE(size, p.c_min);
    EXPECT_LE(size, p.c_max);
    total += size;
  }
  EXPECT_EQ(total, 1000u);
  for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_LE(g.degree(v), p.k_max);
}

INSTANTIATE_TEST_SUITE_P(Mixing, LfrScaled, ::testing::Values(0.2, 0.3, 0.5));

TEST(Lfr, SameSeedSameNetwork) {
  const auto p = scaled(1000, 0.3, 99);
  const auto a = generate_lfr(p);
  const auto b = generate_lfr(p);
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
  EXPECT_TRUE(std::equal(a.partition.assignment().begin(), a.partition.assignment().end(),
                         b.partition.assignment().begin(), b.partition.assignment().end()));
  const auto c = generate_lfr(scaled(1000, 0.3, 100));
  EXPECT_NE(a.graph.edges(), c.graph.edges());
}

TEST(Lfr, TableParametersAtFullScale) {
  LfrParams p;
  p.seed = 5;
  const auto net = generate_lfr(p);
  EXPECT_EQ(net.graph.node_count(), 7500u);
  EXPECT_NEAR(net.realized_mixing, 0.2, 0.03);
}

}  // namespace
}  // namespace netimmune
