#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "netimmune/community.hpp"
#include "test_support.hpp"

namespace netimmune {
namespace {

using testing::bridged_cliques;
using testing::bridged_triangles;
using testing::complete_graph;
using testing::make_graph;
using testing::partition_of;

TEST(IntraInterDegree, BridgedTriangles) {
  const auto g = bridged_triangles();
  const auto p = partition_of({0, 0, 0, 1, 1, 1});
  EXPECT_EQ(intra_degree(g, p, 0), 2u);
  EXPECT_EQ(intra_degree(g, p, 2), 2u);
  EXPECT_EQ(inter_degree(g, p, 2), 1u);
  EXPECT_EQ(inter_degree(g, p, 0), 0u);
}

TEST(IntraInterDegree, SingletonAndFullyExternal) {
  const auto g = make_graph(3, {{0, 1}, {0, 2}});
  const auto p = partition_of({0, 1, 2});
  EXPECT_EQ(intra_degree(g, p, 0), 0u);
  EXPECT_EQ(inter_degree(g, p, 0), 2u);
}

TEST(IntraInterDegree, RemovedNodeThrows) {
  const NodeId drop[] = {0};
  const auto g = bridged_triangles().remove_nodes(drop);
  const auto p = partition_of({0, 0, 0, 1, 1, 1});
  EXPECT_THROW(intra_degree(g, p, 0), std::out_of_range);
  EXPECT_EQ(intra_degree(g, p, 1), 1u);
}

TEST(CommunityMu, Examples) {
  const auto g = bridged_triangles();
  const auto p = partition_of({0, 0, 0, 1, 1, 1});
  // (0/2 + 0/2 + 1/3) / 3
  EXPECT_NEAR(community_mu(g, p, 0), 1.0 / 9.0, 1e-15);

  const auto k3 = complete_graph(3);
  EXPECT_DOUBLE_EQ(community_mu(k3, partition_of({0, 0, 0}), 0), 0.0);

  const auto bip = make_graph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_DOUBLE_EQ(community_mu(bip, partition_of({0, 0, 1, 1}), 0), 1.0);
}

TEST(CommunityMu, IsolatedNodeContributesZero) {
  const auto g = make_graph(3, {{0, 1}});
  const auto p = partition_of({0, 1, 0});
  // node 0: 1/1, node 2: degree 0 -> 0
  EXPECT_DOUBLE_EQ(community_mu(g, p, 0), 0.5);
}

TEST(CommunityMu, CommunityWithoutActiveMembersThrows) {
  const NodeId drop[] = {3, 4, 5};
  const auto g = bridged_triangles().remove_nodes(drop);
  EXPECT_THROW(community_mu(g, partition_of({0, 0, 0, 1, 1, 1}), 1), std::invalid_argument);
}

TEST(GlobalMixing, Examples) {
  const auto g = bridged_triangles();
  EXPECT_NEAR(global_mixing(g, partition_of({0, 0, 0, 1, 1, 1})), 2.0 / 14.0, 1e-15);
  EXPECT_DOUBLE_EQ(global_mixing(g, partition_of({0, 0, 0, 0, 0, 0})), 0.0);
  const auto bip = make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
  EXPECT_DOUBLE_EQ(global_mixing(bip, partition_of({0, 0, 1, 1, 1})), 1.0);
  EXPECT_THROW(global_mixing(make_graph(2, {}), partition_of({0, 1})), std::domain_error);
}

TEST(MuLimit, Examples) {
  EXPECT_NEAR(mu_limit(7500, 180), 0.976, 1e-12);
  EXPECT_DOUBLE_EQ(mu_limit(50, 50), 0.0);
  EXPECT_DOUBLE_EQ(mu_limit(100, 50), 0.5);
  EXPECT_THROW(mu_limit(10, 0), std::invalid_argument);
  EXPECT_THROW(mu_limit(10, 11), std::invalid_argument);
}

TEST(WeightedNetwork, BridgedTrianglesHasOneLink) {
  const auto net = build_community_weighted_network(bridged_triangles(),
                                                    partition_of({0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(net.community_count, 2u);
  EXPECT_EQ(net.weight(0, 1), 1u);
  EXPECT_EQ(net.weight(1, 0), 1u);
  EXPECT_EQ(net.node_links_into(2, 1), 1u);
  EXPECT_EQ(net.node_links_into(0, 1), 0u);
}

TEST(WeightedNetwork, SingleCommunityHasNoLinks) {
  const auto net = build_community_weighted_network(complete_graph(4), partition_of({0, 0, 0, 0}));
  EXPECT_EQ(net.total_inter_weight, 0u);
  EXPECT_TRUE(net.adjacency[0].empty());
}

TEST(WeightedNetwork, PathOfThreeCommunities) {
  // A = {0,1}, B = {2,3}, C = {4,5,6}; A-B share 2 links, B-C share 3.
  const auto g = make_graph(7, {{0, 1}, {2, 3}, {4, 5}, {5, 6}, {0, 2}, {1, 3}, {2, 4}, {3, 5},
                                {3, 6}});
  const auto net = build_community_weighted_network(g, partition_of({0, 0, 1, 1, 2, 2, 2}));
  EXPECT_EQ(net.weight(0, 1), 2u);
  EXPECT_EQ(net.weight(1, 2), 3u);
  EXPECT_EQ(net.weight(0, 2), 0u);
}

TEST(CommunityProperty, RandomInstancesSatisfyIdentities) {
  auto rng = make_rng(7);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 2 + uniform_index(rng, 30);
    const auto g = testing::random_graph(n, 0.05 + 0.4 * std::uniform_real_distribution<>()(rng), rng);
    const auto p = testing::random_partition(n, 1 + uniform_index(rng, 6), rng);
    const auto net = build_community_weighted_network(g, p);

    std::size_t inter_endpoints = 0;
    for (NodeId i = 0; i < n; ++i) {
      const std::size_t in = intra_degree(g, p, i);
      const std::size_t out = inter_degree(g, p, i);
      EXPECT_EQ(in + out, g.degree(i));
      std::size_t d_sum = 0;
      for (CommunityId c = 0; c < p.community_count(); ++c) {
        if (c != p.community_of(i)) d_sum += net.node_links_into(i, c);
      }
      EXPECT_EQ(d_sum, out);
      inter_endpoints += out;
    }

    // Weights from a direct count over node pairs.
    for (CommunityId a = 0; a < p.community_count(); ++a) {
      for (CommunityId b = 0; b < p.community_count(); ++b) {
        if (a == b) continue;
        std::uint64_t direct = 0;
        for (NodeId u : p.members(a))
          for (NodeId v : p.members(b)) direct += g.has_edge(u, v) ? 1 : 0;
        EXPECT_EQ(net.weight(a, b), direct);
        EXPECT_EQ(net.weight(a, b), net.weight(b, a));
      }
      const double mu = community_mu(g, p, a);
      EXPECT_GE(mu, 0.0);
      EXPECT_LE(mu, 1.0);
      bool any_out = false;
      for (NodeId i : p.members(a)) any_out |= inter_degree(g, p, i) > 0;
      EXPECT_EQ(mu == 0.0, !any_out);
    }

    if (g.edge_count() > 0) {
      EXPECT_DOUBLE_EQ(global_mixing(g, p),
                       static_cast<double>(2 * inter_community_edge_count(g, p)) /
                           static_cast<double>(2 * g.edge_count()));
      EXPECT_EQ(inter_endpoints, 2 * inter_community_edge_count(g, p));
    }
  }
}

TEST(LabelPropagation, TwoFiveCliquesSplit) {
  const auto g = bridged_cliques(5);
  int matched = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = detect_communities_label_propagation(g, {seed, 100});
    bool ok = p.community_count() == 2;
    for (NodeId v = 1; v < 5 && ok; ++v) ok = p.community_of(v) == p.community_of(0);
    for (NodeId v = 6; v < 10 && ok; ++v) ok = p.community_of(v) == p.community_of(5);
    matched += ok ? 1 : 0;
  }
  EXPECT_GE(matched, 18);
}

TEST(LabelPropagation, CliqueIsOneCommunity) {
  const auto p = detect_communities_label_propagation(complete_graph(6), {3, 100});
  EXPECT_EQ(p.community_count(), 1u);
}

TEST(LabelPropagation, EdgelessGivesSingletons) {
  const auto p = detect_communities_label_propagation(make_graph(3, {}), {});
  EXPECT_EQ(p.community_count(), 3u);
}

TEST(LabelPropagation, DeterministicForSeed) {
  auto rng = make_rng(5);
  const auto g = testing::random_graph(60, 0.08, rng);
  const auto a = detect_communities_label_propagation(g, {11, 100});
  const auto b = detect_communities_label_propagation(g, {11, 100});
  EXPECT_TRUE(std::equal(a.assignment().begin(), a.assignment().end(), b.assignment().begin(),
                         b.assignment().end()));
}

TEST(PartitionCheck, SizeMismatchThrows) {
  EXPECT_THROW(check_partition(complete_graph(3), partition_of({0, 0})), std::invalid_argument);
}

}  // namespace
}  // namespace netimmune
