#include "netimmune/immunization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "netimmune/random.hpp"

namespace netimmune {

namespace {

double fraction_of(const Graph& graph, std::size_t count) {
  return graph.active_count() == 0
             ? 0.0
             : static_cast<double>(count) / static_cast<double>(graph.active_count());
}

void check_count(const Graph& graph, std::size_t count) {
  if (count > graph.active_count()) {
    throw std::invalid_argument("cannot immunize " + std::to_string(count) + " of " +
                                std::to_string(graph.active_count()) + " active nodes");
  }
}

NodeId pick_active_neighbor(const Graph& g, NodeId v, NodeId avoid, Rng& rng,
                            std::vector<NodeId>& scratch) {
  scratch.clear();
  g.for_each_active_neighbor(v, [&](NodeId u) { scratch.push_back(u); });
  if (scratch.empty()) return kInvalidNode;
  if (scratch.size() > 1 && avoid != kInvalidNode) {
    auto it = std::find(scratch.begin(), scratch.end(), avoid);
    if (it != scratch.end()) scratch.erase(it);
  }
  return scratch[uniform_index(rng, scratch.size())];
}

}  // namespace

std::size_t removal_count(const Graph& graph, double g) {
  if (!(g >= 0.0 && g <= 1.0)) {
    throw std::invalid_argument("removed fraction g must lie in [0, 1]");
  }
  return static_cast<std::size_t>(std::llround(g * static_cast<double>(graph.active_count())));
}

Graph apply_plan(const Graph& graph, const ImmunizationPlan& plan) {
  return graph.remove_nodes(plan.removal_order);
}

ImmunizationPlan immunize_static(const Graph& graph, const CentralityScores& scores,
                                 std::size_t count) {
  check_count(graph, count);
  auto order = rank(scores);
  if (order.size() < count) {
    throw std::invalid_argument("scores cover fewer nodes than the requested count");
  }
  order.resize(count);
  return {scores.measure, std::move(order), fraction_of(graph, count), false};
}

ImmunizationPlan immunize_sequential(const Graph& graph, const Measure& measure,
                                     std::size_t count) {
  check_count(graph, count);
  ImmunizationPlan plan;
  plan.g = fraction_of(graph, count);
  Graph current = graph;
  for (std::size_t i = 0; i < count; ++i) {
    const auto scores = measure(current);
    if (plan.strategy.empty()) plan.strategy = scores.measure + "-sequential";
    const NodeId top = top_node(scores);
    if (top == kInvalidNode) throw std::runtime_error("graph exhausted during sequential removal");
    plan.removal_order.push_back(top);
    const NodeId removed[] = {top};
    current = current.remove_nodes(removed);
  }
  if (plan.strategy.empty()) plan.strategy = "sequential";
  return plan;
}

std::vector<std::size_t> apportion(std::span<const std::size_t> sizes, std::size_t total) {
  const std::size_t population = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<std::size_t> budget(sizes.size(), 0);
  if (total == 0) return budget;
  if (total > population) throw std::invalid_argument("apportion: total exceeds population");

  // Exact integer arithmetic: quota_i = total * size_i / population.
  std::vector<std::size_t> remainder(sizes.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    __extension__ using Wide = unsigned __int128;
    const auto scaled = static_cast<Wide>(total) * sizes[i];
    budget[i] = static_cast<std::size_t>(scaled / population);
    remainder[i] = static_cast<std::size_t>(scaled % population);
    assigned += budget[i];
  }
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) ++budget[order[i]];
  return budget;
}

ImmunizationPlan immunize_commn(const Graph& graph, const Partition& partition, double g,
                                const CommnParams& params) {
  check_partition(graph, partition);
  const std::size_t total = removal_count(graph, g);
  std::vector<std::size_t> sizes(partition.community_count());
  for (CommunityId c = 0; c < sizes.size(); ++c) sizes[c] = partition.active_size(graph, c);
  const auto budgets = apportion(sizes, total);

  ImmunizationPlan plan{"commn", {}, fraction_of(graph, total), false};
  plan.removal_order.reserve(total);
  Graph current = graph;
  for (CommunityId c = 0; c < budgets.size(); ++c) {
    for (std::size_t i = 0; i < budgets[c]; ++i) {
      const NodeId top = top_node(commn_centrality_in(current, partition, c, params));
      plan.removal_order.push_back(top);
      const NodeId removed[] = {top};
      current = current.remove_nodes(removed);
    }
  }
  return plan;
}

ImmunizationPlan immunize_acquaintance(const Graph& graph, std::size_t count,
                                       const StochasticParams& params) {
  check_count(graph, count);
  if (params.acquaintance_threshold == 0) {
    throw std::invalid_argument("acquaintance threshold must be at least 1");
  }
  ImmunizationPlan plan{"acquaintance", {}, 0.0, false};
  if (count == 0) return plan;

  const auto nodes = graph.active_nodes();
  auto rng = make_rng(params.seed);
  std::vector<std::uint32_t> picks(graph.node_count(), 0);
  std::vector<std::uint8_t> planned(graph.node_count(), 0);
  std::vector<NodeId> scratch;
  const std::size_t max_draws = 1000 * nodes.size() * params.acquaintance_threshold;

  for (std::size_t draw = 0; draw < max_draws && plan.removal_order.size() < count; ++draw) {
    const NodeId v0 = nodes[uniform_index(rng, nodes.size())];
    const NodeId v1 = pick_active_neighbor(graph, v0, kInvalidNode, rng, scratch);
    if (v1 == kInvalidNode) continue;
    if (++picks[v1] >= params.acquaintance_threshold && !planned[v1]) {
      planned[v1] = 1;
      plan.removal_order.push_back(v1);
    }
  }
  plan.truncated = plan.removal_order.size() < count;
  plan.g = fraction_of(graph, plan.removal_order.size());
  return plan;
}

ImmunizationPlan immunize_cbf(const Graph& graph, std::size_t count,
                              const StochasticParams& params) {
  check_count(graph, count);
  ImmunizationPlan plan{"cbf", {}, 0.0, false};
  if (count == 0) return plan;

  const std::size_t n = graph.active_count();
  const std::size_t max_walk = params.cbf_max_walk > 0 ? params.cbf_max_walk : 10 * n;
  const std::size_t max_failures =
      params.cbf_max_failures > 0 ? params.cbf_max_failures : 10 * n + 100;
  auto rng = make_rng(params.seed);

  Graph current = graph;
  std::vector<NodeId> nodes = current.active_nodes();
  std::vector<std::uint32_t> visit_stamp(graph.node_count(), 0);
  std::uint32_t walk_id = 0;
  std::vector<NodeId> scratch;
  std::size_t failures = 0;

  while (plan.removal_order.size() < count) {
    if (current.edge_count() == 0 || failures >= max_failures) {
      plan.truncated = true;
      break;
    }
    ++walk_id;
    const NodeId start = nodes[uniform_index(rng, nodes.size())];
    visit_stamp[start] = walk_id;

    NodeId prev = kInvalidNode;
    NodeId cur = start;
    NodeId found = kInvalidNode;
    for (std::size_t step = 1; step <= max_walk; ++step) {
      const NodeId next = pick_active_neighbor(current, cur, params.cbf_backtrack ? kInvalidNode : prev, rng, scratch);
      if (next == kInvalidNode) break;
      if (step >= 2) {
        std::size_t back_links = 0;
        current.for_each_active_neighbor(next, [&](NodeId u) {
          if (visit_stamp[u] == walk_id) ++back_links;
        });
        if (back_links <= 1) {
          found = cur;
          break;
        }
      }
      visit_stamp[next] = walk_id;
      prev = cur;
      cur = next;
    }

    if (found == kInvalidNode) {
      ++failures;
      continue;
    }
    failures = 0;
    plan.removal_order.push_back(found);
    const NodeId removed[] = {found};
    current = current.remove_nodes(removed);
    nodes.erase(std::find(nodes.begin(), nodes.end(), found));
  }
  plan.g = fraction_of(graph, plan.removal_order.size());
  return plan;
}

}  // namespace netimmune
