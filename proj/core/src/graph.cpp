#include "netimmune/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace netimmune {

Graph::Graph() : topology_(std::make_shared<Topology>(Topology{{0}, {}})) {}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::size_t> counts(node_count + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw std::out_of_range("edge endpoint " + std::to_string(std::max(u, v)) +
                              " outside [0, " + std::to_string(node_count) + ")");
    }
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::size_t i = 1; i <= node_count; ++i) counts[i] += counts[i - 1];

  std::vector<NodeId> raw(counts.back());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  Topology topo;
  topo.offsets.assign(node_count + 1, 0);
  topo.targets.reserve(raw.size());
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    topo.targets.insert(topo.targets.end(), first, last);
    topo.offsets[v + 1] = topo.targets.size();
  }
  topo.targets.shrink_to_fit();

  Graph g;
  g.active_.assign(node_count, 1);
  g.degree_.resize(node_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    g.degree_[v] = static_cast<std::uint32_t>(topo.offsets[v + 1] - topo.offsets[v]);
  }
  g.active_count_ = node_count;
  g.edge_count_ = topo.targets.size() / 2;
  g.topology_ = std::make_shared<const Topology>(std::move(topo));
  return g;
}

std::size_t Graph::degree(NodeId v) const {
  if (!is_active(v)) {
    throw std::out_of_range("node " + std::to_string(v) +
                            (contains(v) ? " has been removed" : " is out of range"));
  }
  return degree_[v];
}

std::span<const NodeId> Graph::neighbors(NodeId v) const noexcept {
  const auto& t = *topology_;
  return {t.targets.data() + t.offsets[v], t.offsets[v + 1] - t.offsets[v]};
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (!is_active(u) || !is_active(v)) return false;
  auto nu = neighbors(u);
  auto nv = neighbors(v);
  if (nv.size() < nu.size()) std::swap(u, v), std::swap(nu, nv);
  return std::binary_search(nu.begin(), nu.end(), v);
}

Graph Graph::remove_nodes(std::span<const NodeId> nodes) const {
  Graph out = *this;
  for (NodeId v : nodes) {
    if (!out.contains(v)) {
      throw std::invalid_argument("cannot remove node " + std::to_string(v) + ": out of range");
    }
    if (!out.active_[v]) {
      throw std::invalid_argument("cannot remove node " + std::to_string(v) +
                                  ": already removed");
    }
    out.active_[v] = 0;
    out.edge_count_ -= out.degree_[v];
    for (NodeId u : neighbors(v)) {
      if (out.active_[u]) --out.degree_[u];
    }
    out.degree_[v] = 0;
    --out.active_count_;
  }
  return out;
}

std::vector<NodeId> Graph::active_nodes() const {
  std::vector<NodeId> out;
  out.reserve(active_count_);
  for (NodeId v = 0; v < active_.size(); ++v) {
    if (active_[v]) out.push_back(v);
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < active_.size(); ++u) {
    if (!active_[u]) continue;
    for (NodeId v : neighbors(u)) {
      if (v > u && active_[v]) out.emplace_back(u, v);
    }
  }
  return out;
}

Components connected_components(const Graph& graph) {
  Components c;
  c.label.assign(graph.node_count(), kInvalidNode);
  std::vector<NodeId> queue;
  queue.reserve(graph.node_count());
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    if (!graph.is_active(s) || c.label[s] != kInvalidNode) continue;
    const auto id = static_cast<NodeId>(c.sizes.size());
    queue.clear();
    queue.push_back(s);
    c.label[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      graph.for_each_active_neighbor(queue[head], [&](NodeId u) {
        if (c.label[u] == kInvalidNode) {
          c.label[u] = id;
          queue.push_back(u);
        }
      });
    }
    c.sizes.push_back(queue.size());
  }
  return c;
}

std::size_t largest_connected_component_size(const Graph& graph) {
  const auto c = connected_components(graph);
  return c.sizes.empty() ? 0 : *std::max_element(c.sizes.begin(), c.sizes.end());
}

bool is_connected(const Graph& graph) {
  return connected_components(graph).sizes.size() <= 1;
}

}  // namespace netimmune
