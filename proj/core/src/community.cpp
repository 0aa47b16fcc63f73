#include "netimmune/community.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "netimmune/random.hpp"

namespace netimmune {

Partition Partition::from_labels(std::span<const std::uint64_t> label_of_node) {
  Partition p;
  p.community_of_.resize(label_of_node.size());
  std::unordered_map<std::uint64_t, CommunityId> dense;
  for (NodeId v = 0; v < label_of_node.size(); ++v) {
    auto [it, inserted] =
        dense.try_emplace(label_of_node[v], static_cast<CommunityId>(p.members_.size()));
    if (inserted) p.members_.emplace_back();
    p.community_of_[v] = it->second;
    p.members_[it->second].push_back(v);
  }
  return p;
}

std::vector<NodeId> Partition::active_members(const Graph& graph, CommunityId c) const {
  std::vector<NodeId> out;
  for (NodeId v : members(c)) {
    if (graph.is_active(v)) out.push_back(v);
  }
  return out;
}

std::size_t Partition::active_size(const Graph& graph, CommunityId c) const {
  const auto m = members(c);
  return static_cast<std::size_t>(
      std::count_if(m.begin(), m.end(), [&](NodeId v) { return graph.is_active(v); }));
}

void check_partition(const Graph& graph, const Partition& partition) {
  if (partition.node_count() != graph.node_count()) {
    throw std::invalid_argument("partition covers " + std::to_string(partition.node_count()) +
                                " nodes but the graph has " +
                                std::to_string(graph.node_count()));
  }
}

std::size_t intra_degree(const Graph& graph, const Partition& partition, NodeId i) {
  graph.degree(i);  // validates i
  const CommunityId c = partition.community_of(i);
  std::size_t k_in = 0;
  graph.for_each_active_neighbor(i, [&](NodeId j) {
    if (partition.community_of(j) == c) ++k_in;
  });
  return k_in;
}

std::size_t inter_degree(const Graph& graph, const Partition& partition, NodeId i) {
  return graph.degree(i) - intra_degree(graph, partition, i);
}

double community_mu(const Graph& graph, const Partition& partition, CommunityId c) {
  double sum = 0.0;
  std::size_t size = 0;
  for (NodeId i : partition.members(c)) {
    if (!graph.is_active(i)) continue;
    ++size;
    const std::size_t k = graph.degree_unchecked(i);
    if (k == 0) continue;
    sum += static_cast<double>(inter_degree(graph, partition, i)) / static_cast<double>(k);
  }
  if (size == 0) {
    throw std::invalid_argument("community " + std::to_string(c) + " has no active members");
  }
  return sum / static_cast<double>(size);
}

std::size_t inter_community_edge_count(const Graph& graph, const Partition& partition) {
  std::size_t count = 0;
  for (const auto& [u, v] : graph.edges()) {
    if (partition.community_of(u) != partition.community_of(v)) ++count;
  }
  return count;
}

double global_mixing(const Graph& graph, const Partition& partition) {
  check_partition(graph, partition);
  if (graph.edge_count() == 0) {
    throw std::domain_error("global mixing is undefined on an edgeless graph");
  }
  return static_cast<double>(inter_community_edge_count(graph, partition)) /
         static_cast<double>(graph.edge_count());
}

double mu_limit(std::size_t n, std::size_t largest_community) {
  if (n == 0 || largest_community == 0 || largest_community > n) {
    throw std::invalid_argument("mu_limit requires 0 < largest community <= n");
  }
  return static_cast<double>(n - largest_community) / static_cast<double>(n);
}

namespace {

std::uint64_t find_weight(const std::vector<CommunityWeightedNetwork::Link>& links,
                          CommunityId c) {
  auto it = std::lower_bound(links.begin(), links.end(), c,
                             [](const auto& l, CommunityId id) { return l.community < id; });
  return (it != links.end() && it->community == c) ? it->weight : 0;
}

void add_link(std::vector<CommunityWeightedNetwork::Link>& links, CommunityId c) {
  auto it = std::lower_bound(links.begin(), links.end(), c,
                             [](const auto& l, CommunityId id) { return l.community < id; });
  if (it != links.end() && it->community == c) {
    ++it->weight;
  } else {
    links.insert(it, {c, 1});
  }
}

}  // namespace

std::uint64_t CommunityWeightedNetwork::weight(CommunityId a, CommunityId b) const {
  if (a == b) return 0;
  return find_weight(adjacency.at(a), b);
}

std::uint64_t CommunityWeightedNetwork::node_links_into(NodeId k, CommunityId c) const {
  return find_weight(node_links.at(k), c);
}

CommunityWeightedNetwork build_community_weighted_network(const Graph& graph,
                                                          const Partition& partition) {
  check_partition(graph, partition);
  CommunityWeightedNetwork net;
  net.community_count = partition.community_count();
  net.adjacency.resize(net.community_count);
  net.node_links.resize(graph.node_count());

  for (NodeId k = 0; k < graph.node_count(); ++k) {
    if (!graph.is_active(k)) continue;
    const CommunityId own = partition.community_of(k);
    graph.for_each_active_neighbor(k, [&](NodeId j) {
      const CommunityId other = partition.community_of(j);
      if (other == own) return;
      add_link(net.node_links[k], other);
      // Each inter edge is seen from both endpoints; count it from the lower id.
      if (k < j) {
        add_link(net.adjacency[own], other);
        add_link(net.adjacency[other], own);
        ++net.total_inter_weight;
      }
    });
  }
  return net;
}

Partition detect_communities_label_propagation(const Graph& graph,
                                               const LabelPropagationOptions& options) {
  const std::size_t n = graph.node_count();
  std::vector<std::uint64_t> label(n);
  std::iota(label.begin(), label.end(), 0);

  auto rng = make_rng(options.seed);
  std::vector<NodeId> order = graph.active_nodes();
  std::unordered_map<std::uint64_t, std::size_t> freq;
  std::vector<std::uint64_t> best;

  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    bool changed = false;
    for (NodeId v : order) {
      if (graph.degree_unchecked(v) == 0) continue;
      freq.clear();
      std::size_t top = 0;
      graph.for_each_active_neighbor(v, [&](NodeId u) {
        top = std::max(top, ++freq[label[u]]);
      });
      if (freq[label[v]] == top) continue;
      best.clear();
      for (const auto& [l, f] : freq) {
        if (f == top) best.push_back(l);
      }
      // Hash-map iteration order is unspecified; sort so the draw is reproducible.
      std::sort(best.begin(), best.end());
      label[v] = best[uniform_index(rng, best.size())];
      changed = true;
    }
    if (!changed) break;
  }
  return Partition::from_labels(label);
}

}  // namespace netimmune
