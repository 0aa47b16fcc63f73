#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "netimmune/centrality.hpp"
#include "netimmune/community.hpp"
#include "netimmune/graph.hpp"

namespace netimmune {

struct ImmunizationPlan {
  std::string strategy;
  /// Distinct active nodes in execution order.
  std::vector<NodeId> removal_order;
  /// Removed fraction of the graph's active nodes.
  double g = 0.0;
  /// Set when a stochastic strategy stopped before reaching the requested count.
  bool truncated = false;
};

/// round(g * active_count); throws unless 0 <= g <= 1.
std::size_t removal_count(const Graph& graph, double g);

Graph apply_plan(const Graph& graph, const ImmunizationPlan& plan);

/// Top `count` nodes of rank(scores).
ImmunizationPlan immunize_static(const Graph& graph, const CentralityScores& scores,
                                 std::size_t count);

using Measure = std::function<CentralityScores(const Graph&)>;

/// Recomputes `measure` on the reduced graph after every single removal.
ImmunizationPlan immunize_sequential(const Graph& graph, const Measure& measure,
                                     std::size_t count);

/// Largest-remainder apportionment of `total` proportional to `sizes`; equal
/// remainders go to the lower index first.
std::vector<std::size_t> apportion(std::span<const std::size_t> sizes, std::size_t total);

/// Per-community budgets proportional to active community sizes. Communities
/// are processed in ascending id; inside each, the top Commn node is removed
/// and the community's scores are recomputed before the next removal.
ImmunizationPlan immunize_commn(const Graph& graph, const Partition& partition, double g,
                                const CommnParams& params = {});

struct StochasticParams {
  std::uint64_t seed = 0;
  /// Times a node must be drawn as an acquaintance before it is immunized.
  std::size_t acquaintance_threshold = 1;
  /// Step cap for a single CBF walk; 0 means 10 * active nodes.
  std::size_t cbf_max_walk = 0;
  /// Allow a CBF walk to step straight back to the node it came from.
  bool cbf_backtrack = false;
  /// Consecutive failed CBF walks before giving up; 0 means 10 * n + 100.
  std::size_t cbf_max_failures = 0;
};

/// Draws a random active node, then a random active neighbor of it, and counts
/// the neighbor; a node is planned when its count reaches the threshold. Sampling
/// always uses the input graph. Gives up after 1000 * n * threshold draws.
ImmunizationPlan immunize_acquaintance(const Graph& graph, std::size_t count,
                                       const StochasticParams& params);

/// Community bridge finder. Each walk starts at a random node and steps to
/// uniform random neighbors, avoiding the previous node unless it is the only
/// one (or cbf_backtrack is set). From the second step on, when the new node has at most one edge into
/// the nodes visited by this walk, the walk has left the region it explored and
/// the node it stepped from is planned and removed; the next walk runs on the
/// reduced graph. Walks longer than cbf_max_walk are abandoned. Stops (truncated)
/// when the reduced graph has no edges or cbf_max_failures walks in a row fail.
ImmunizationPlan immunize_cbf(const Graph& graph, std::size_t count,
                              const StochasticParams& params);

}  // namespace netimmune
