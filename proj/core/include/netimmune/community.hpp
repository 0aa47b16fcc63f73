#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "netimmune/graph.hpp"
#include "netimmune/types.hpp"

namespace netimmune {

/// Non-overlapping assignment of every node id (removed ones included) to a
/// community. Community ids are dense and numbered in first-seen node order.
class Partition {
 public:
  Partition() = default;

  /// Renumbers arbitrary labels densely in order of first appearance.
  static Partition from_labels(std::span<const std::uint64_t> label_of_node);

  std::size_t node_count() const noexcept { return community_of_.size(); }
  std::size_t community_count() const noexcept { return members_.size(); }
  CommunityId community_of(NodeId v) const { return community_of_.at(v); }
  std::span<const CommunityId> assignment() const noexcept { return community_of_; }
  /// All members in ascending id order, removed nodes included.
  std::span<const NodeId> members(CommunityId c) const { return members_.at(c); }

  /// Members still active in `graph`.
  std::vector<NodeId> active_members(const Graph& graph, CommunityId c) const;
  std::size_t active_size(const Graph& graph, CommunityId c) const;

 private:
  std::vector<CommunityId> community_of_;
  std::vector<std::vector<NodeId>> members_;
};

/// Throws std::invalid_argument unless the partition covers exactly the graph's ids.
void check_partition(const Graph& graph, const Partition& partition);

/// k_i^in: active neighbors of i inside its own community.
std::size_t intra_degree(const Graph& graph, const Partition& partition, NodeId i);
/// k_i^out = degree - k_i^in.
std::size_t inter_degree(const Graph& graph, const Partition& partition, NodeId i);

/// Community cohesion: mean over active members of k_out/k. Degree-0 members
/// contribute 0. Throws if the community has no active members.
double community_mu(const Graph& graph, const Partition& partition, CommunityId c);

/// Sum of inter-community degree over sum of degree. Throws on edgeless graphs.
double global_mixing(const Graph& graph, const Partition& partition);

/// Number of active edges whose endpoints lie in different communities.
std::size_t inter_community_edge_count(const Graph& graph, const Partition& partition);

/// Mixing value above which a network with this largest community carries no
/// community structure: (n - largest_community) / n.
double mu_limit(std::size_t n, std::size_t largest_community);

/// Quotient network whose nodes are communities, weighted by shared link counts.
struct CommunityWeightedNetwork {
  struct Link {
    CommunityId community;
    std::uint64_t weight;
  };

  std::size_t community_count = 0;
  /// Per community, its inter-community links sorted by community id.
  std::vector<std::vector<Link>> adjacency;
  /// Per node, links from that node into each *other* community, sorted by id.
  std::vector<std::vector<Link>> node_links;
  std::uint64_t total_inter_weight = 0;

  std::uint64_t weight(CommunityId a, CommunityId b) const;
  /// d_kI: number of links from node k into community I (0 for its own community).
  std::uint64_t node_links_into(NodeId k, CommunityId c) const;
};

CommunityWeightedNetwork build_community_weighted_network(const Graph& graph,
                                                          const Partition& partition);

struct LabelPropagationOptions {
  std::uint64_t seed = 0;
  std::size_t max_sweeps = 100;
};

/// Asynchronous label propagation with a fresh random node order each sweep.
/// A node keeps its label when that label is among the most frequent in its
/// neighborhood; otherwise it adopts one of the most frequent uniformly at
/// random. Stops at a fixpoint or after max_sweeps.
Partition detect_communities_label_propagation(const Graph& graph,
                                               const LabelPropagationOptions& options = {});

}  // namespace netimmune
