#include "netimmune/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "netimmune/parallel.hpp"

namespace netimmune {

CentralityScores::CentralityScores(std::string name, const Graph& graph)
    : measure(std::move(name)), value(graph.node_count(), 0.0), present(graph.node_count(), 0) {}

double CentralityScores::at(NodeId v) const {
  if (!has(v)) throw std::out_of_range("no " + measure + " score for node " + std::to_string(v));
  return value[v];
}

void CentralityScores::set(NodeId v, double score) {
  value.at(v) = score;
  present[v] = 1;
}

std::size_t CentralityScores::size() const {
  return static_cast<std::size_t>(std::count(present.begin(), present.end(), 1));
}

std::vector<NodeId> rank(const CentralityScores& scores) {
  std::vector<NodeId> order;
  for (NodeId v = 0; v < scores.present.size(); ++v) {
    if (scores.present[v]) order.push_back(v);
  }
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return ranks_before(scores, a, b); });
  return order;
}

NodeId top_node(const CentralityScores& scores) {
  NodeId best = kInvalidNode;
  for (NodeId v = 0; v < scores.present.size(); ++v) {
    if (!scores.present[v]) continue;
    if (best == kInvalidNode || ranks_before(scores, v, best)) best = v;
  }
  return best;
}

CentralityScores degree_centrality(const Graph& graph) {
  CentralityScores s("degree", graph);
  for (NodeId v : graph.active_nodes()) s.set(v, static_cast<double>(graph.degree_unchecked(v)));
  return s;
}

namespace {

/// Per-source Brandes state, reused across the sources of one block.
struct BrandesWorkspace {
  std::vector<std::int64_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<NodeId> order;

  explicit BrandesWorkspace(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) {
    order.reserve(n);
  }

  void accumulate(const Graph& g, NodeId s, std::vector<double>& bc) {
    order.clear();
    order.push_back(s);
    dist[s] = 0;
    sigma[s] = 1.0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      g.for_each_active_neighbor(v, [&](NodeId w) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      });
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      g.for_each_active_neighbor(w, [&](NodeId v) {
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      });
      if (w != s) bc[w] += delta[w];
    }
    for (NodeId v : order) {
      dist[v] = -1;
      sigma[v] = 0.0;
      delta[v] = 0.0;
    }
  }
};

}  // namespace

CentralityScores betweenness_centrality(const Graph& graph, unsigned workers) {
  const std::size_t n = graph.node_count();
  const auto sources = graph.active_nodes();
  // Block count depends on n only, never on the worker count.
  const std::size_t blocks = std::clamp<std::size_t>(
      std::min<std::size_t>((std::size_t{1} << 24) / std::max<std::size_t>(n, 1), 64), 1,
      std::max<std::size_t>(sources.size(), 1));
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));

  parallel_for(blocks, workers, [&](std::size_t b) {
    BrandesWorkspace ws(n);
    const std::size_t first = sources.size() * b / blocks;
    const std::size_t last = sources.size() * (b + 1) / blocks;
    for (std::size_t i = first; i < last; ++i) ws.accumulate(graph, sources[i], partial[b]);
  });

  CentralityScores s("betweenness", graph);
  for (NodeId v : sources) {
    double total = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) total += partial[b][v];
    // Each unordered pair was counted from both endpoints.
    s.set(v, total / 2.0);
  }
  return s;
}

LeadingEigenvector leading_eigenvector(const CommunityWeightedNetwork& net, double tolerance,
                                       std::size_t max_iterations) {
  const std::size_t k = net.community_count;
  LeadingEigenvector out;
  if (k == 0) return out;

  auto multiply = [&](const std::vector<double>& u, std::vector<double>& y) {
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (const auto& link : net.adjacency[i]) acc += static_cast<double>(link.weight) * u[link.community];
      y[i] = acc;
    }
  };

  // Shift by a lower bound on the leading eigenvalue so the spectrum of W + shift*I
  // has a strictly dominant top eigenvalue even for bipartite quotient networks.
  double shift = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double sq = 0.0;
    for (const auto& link : net.adjacency[i]) {
      const auto w = static_cast<double>(link.weight);
      sq += w * w;
    }
    shift = std::max(shift, std::sqrt(sq));
  }
  shift = std::max(shift, 2.0 * static_cast<double>(net.total_inter_weight) / static_cast<double>(k));

  std::vector<double> u(k, 1.0 / std::sqrt(static_cast<double>(k)));
  std::vector<double> wu(k);
  for (std::size_t it = 0;; ++it) {
    multiply(u, wu);
    double rho = 0.0;
    for (std::size_t i = 0; i < k; ++i) rho += u[i] * wu[i];
    double res = 0.0;
    for (std::size_t i = 0; i < k; ++i) res += (wu[i] - rho * u[i]) * (wu[i] - rho * u[i]);
    res = std::sqrt(res);
    out.value = rho;
    out.residual = res;
    out.iterations = it;
    if (res <= tolerance * std::max(1.0, rho) || it >= max_iterations) break;

    double norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      wu[i] += shift * u[i];
      norm += wu[i] * wu[i];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    for (std::size_t i = 0; i < k; ++i) u[i] = wu[i] / norm;
  }
  out.vector = std::move(u);
  return out;
}

CentralityScores mod_centrality(const Graph& graph, const Partition& partition) {
  check_partition(graph, partition);
  if (partition.community_count() == 0 && graph.active_count() > 0) {
    throw std::invalid_argument("mod centrality needs a non-empty partition");
  }
  const auto net = build_community_weighted_network(graph, partition);
  CentralityScores s("mod", graph);

  if (net.total_inter_weight == 0) {
    for (NodeId v : graph.active_nodes()) {
      s.set(v, static_cast<double>(intra_degree(graph, partition, v)));
    }
    return s;
  }

  const auto eig = leading_eigenvector(net);
  const auto& u = eig.vector;
  for (NodeId v : graph.active_nodes()) {
    double reach = 0.0;
    for (const auto& link : net.node_links[v]) {
      reach += static_cast<double>(link.weight) * u[link.community];
    }
    s.set(v, 2.0 * u[partition.community_of(v)] * reach);
  }
  return s;
}

CommunityProfile community_profile(const Graph& graph, const Partition& partition,
                                   CommunityId c, const CommnParams& params) {
  CommunityProfile p;
  double ratio_sum = 0.0;
  std::size_t size = 0;
  for (NodeId i : partition.members(c)) {
    if (!graph.is_active(i)) continue;
    ++size;
    const std::size_t k = graph.degree_unchecked(i);
    const std::size_t k_in = intra_degree(graph, partition, i);
    const std::size_t k_out = k - k_in;
    p.max_in = std::max(p.max_in, k_in);
    p.max_out = std::max(p.max_out, k_out);
    if (k > 0) ratio_sum += static_cast<double>(k_out) / static_cast<double>(k);
  }
  if (size == 0) {
    throw std::invalid_argument("community " + std::to_string(c) + " has no active members");
  }
  p.mu = ratio_sum / static_cast<double>(size);
  if (params.scale) {
    if (!(*params.scale >= 1.0)) throw std::invalid_argument("Commn scale R must be >= 1");
    p.scale = *params.scale;
  } else {
    p.scale = static_cast<double>(std::max<std::size_t>(p.max_in, 1));
  }
  return p;
}

double commn_score(std::size_t k_in, std::size_t k_out, const CommunityProfile& profile) {
  const double hub =
      profile.max_in == 0
          ? 0.0
          : static_cast<double>(k_in) / static_cast<double>(profile.max_in) * profile.scale;
  const double bridge =
      profile.max_out == 0
          ? 0.0
          : static_cast<double>(k_out) / static_cast<double>(profile.max_out) * profile.scale;
  return (1.0 + profile.mu) * hub + (1.0 - profile.mu) * bridge * bridge;
}

namespace {

void score_community(const Graph& graph, const Partition& partition, CommunityId c,
                     const CommnParams& params, CentralityScores& out) {
  const auto profile = community_profile(graph, partition, c, params);
  for (NodeId i : partition.members(c)) {
    if (!graph.is_active(i)) continue;
    const std::size_t k_in = intra_degree(graph, partition, i);
    out.set(i, commn_score(k_in, graph.degree_unchecked(i) - k_in, profile));
  }
}

}  // namespace

CentralityScores commn_centrality_in(const Graph& graph, const Partition& partition,
                                     CommunityId c, const CommnParams& params) {
  CentralityScores s("commn", graph);
  score_community(graph, partition, c, params, s);
  return s;
}

CentralityScores commn_centrality(const Graph& graph, const Partition& partition,
                                  const CommnParams& params) {
  check_partition(graph, partition);
  CentralityScores s("commn", graph);
  for (CommunityId c = 0; c < partition.community_count(); ++c) {
    if (partition.active_size(graph, c) > 0) score_community(graph, partition, c, params, s);
  }
  return s;
}

}  // namespace netimmune
