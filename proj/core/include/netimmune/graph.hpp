#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "netimmune/types.hpp"

namespace netimmune {

using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph over dense node ids with mask-based node removal.
///
/// The adjacency structure (sorted CSR) is immutable and shared between a graph
/// and every graph derived from it by remove_nodes(); only the activity mask and
/// the cached active degrees are per-value. Neighbor lists always contain the
/// full original adjacency, so callers that traverse must skip inactive nodes
/// (for_each_active_neighbor does this).
class Graph {
 public:
  Graph();

  /// Builds a simple graph on nodes [0, node_count). Self-loops and duplicate
  /// edges (in either direction) are dropped.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  /// Total number of node ids, removed ones included.
  std::size_t node_count() const noexcept { return active_.size(); }
  std::size_t active_count() const noexcept { return active_count_; }
  /// Edges with both endpoints active.
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool contains(NodeId v) const noexcept { return v < active_.size(); }
  bool is_active(NodeId v) const noexcept { return v < active_.size() && active_[v] != 0; }

  /// Active neighbors of v. Throws std::out_of_range if v is removed or unknown.
  std::size_t degree(NodeId v) const;
  /// Degree without the activity check; 0 for removed nodes.
  std::size_t degree_unchecked(NodeId v) const noexcept { return degree_[v]; }

  /// Original sorted adjacency of v, removed neighbors included.
  std::span<const NodeId> neighbors(NodeId v) const noexcept;

  /// True when both endpoints are active and adjacent. O(log d).
  bool has_edge(NodeId u, NodeId v) const noexcept;

  template <class Fn>
  void for_each_active_neighbor(NodeId v, Fn&& fn) const {
    for (NodeId u : neighbors(v)) {
      if (active_[u]) fn(u);
    }
  }

  /// Returns a graph with `nodes` masked inactive. Throws std::invalid_argument
  /// if any node is out of range, already removed, or listed twice.
  Graph remove_nodes(std::span<const NodeId> nodes) const;

  std::vector<NodeId> active_nodes() const;
  /// Every active edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

 private:
  struct Topology {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> targets;
  };

  std::shared_ptr<const Topology> topology_;
  std::vector<std::uint8_t> active_;
  std::vector<std::uint32_t> degree_;
  std::size_t active_count_ = 0;
  std::size_t edge_count_ = 0;
};

/// Component label per node (kInvalidNode for removed nodes) and component sizes.
struct Components {
  std::vector<NodeId> label;
  std::vector<std::size_t> sizes;
};

Components connected_components(const Graph& graph);

/// Size of the largest connected component over active nodes; 0 if none.
std::size_t largest_connected_component_size(const Graph& graph);

bool is_connected(const Graph& graph);

}  // namespace netimmune
