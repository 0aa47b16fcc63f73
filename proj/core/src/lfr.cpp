#include "netimmune/lfr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "netimmune/random.hpp"

namespace netimmune {

namespace {

// Stream offsets for the generation steps under params.seed.
constexpr std::uint64_t kDegreeStream = 1;
constexpr std::uint64_t kMatchingStream = 2;
constexpr std::uint64_t kSizeStream = 3;
constexpr std::uint64_t kAssignStream = 4;
constexpr std::uint64_t kRewireStream = 5;
constexpr std::size_t kHostAttempts = 1000;

/// For every threshold s, the nodes needing more than s internal links must
/// fit into the communities larger than s.
bool sizes_can_host(std::vector<std::size_t> targets, std::vector<std::size_t> sizes) {
  std::sort(targets.begin(), targets.end(), std::greater<>());
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  std::size_t capacity = 0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    while (c < sizes.size() && sizes[c] >= targets[i]) capacity += sizes[c++];
    if (i + 1 > capacity) return false;
  }
  return true;
}

constexpr std::size_t kDegreeDraws = 100;
constexpr std::size_t kMatchingRounds = 100;
constexpr std::size_t kSizeAttempts = 1000;

/// Discrete power law on [lo, hi] with the weight of `lo` scaled by lo_fraction.
struct TruncatedPowerLaw {
  std::size_t lo;
  std::size_t hi;
  double lo_fraction;
  double exponent;

  std::vector<double> weights() const {
    std::vector<double> w;
    w.reserve(hi - lo + 1);
    for (std::size_t k = lo; k <= hi; ++k) w.push_back(std::pow(static_cast<double>(k), -exponent));
    w.front() *= lo_fraction;
    return w;
  }

  double mean() const {
    const auto w = weights();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      num += w[i] * static_cast<double>(lo + i);
      den += w[i];
    }
    return num / den;
  }

  /// Real-valued cutoff c in [1, hi]: lo = floor(c), lo keeps 1 - frac(c) of its weight.
  static TruncatedPowerLaw at_cutoff(double c, std::size_t hi, double exponent) {
    c = std::clamp(c, 1.0, static_cast<double>(hi));
    const auto lo = static_cast<std::size_t>(std::floor(c));
    if (lo >= hi) return {hi, hi, 1.0, exponent};
    return {lo, hi, 1.0 - (c - static_cast<double>(lo)), exponent};
  }
};

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

void LfrParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("LFR: " + what); };
  if (n == 0) fail("n must be positive");
  if (k_max == 0) fail("k_max must be positive");
  if (k_max >= n) fail("k_max must be smaller than n");
  if (!(k_avg >= 1.0) || k_avg > static_cast<double>(k_max)) fail("k_avg must lie in [1, k_max]");
  if (!(gamma > 1.0)) fail("gamma must exceed 1");
  if (!(beta > 1.0)) fail("beta must exceed 1");
  if (c_min == 0) fail("c_min must be at least 1");
  if (c_min > c_max) fail("c_min must not exceed c_max");
  if (c_max > n) fail("c_max must not exceed n");
  if (!(mix_tolerance >= 0.0)) fail("mix_tolerance must be non-negative");
}

void LfrParams::validate_for_generation() const {
  validate();
  const double limit = mu_limit(n, c_max);
  if (!(mu >= 0.0) || !(mu < limit)) {
    std::ostringstream os;
    os << "LFR: mu must lie in [0, " << limit << ") for n=" << n << ", c_max=" << c_max;
    throw std::invalid_argument(os.str());
  }
}

std::string LfrParams::describe() const {
  std::ostringstream os;
  os << "n=" << n << " k_avg=" << k_avg << " k_max=" << k_max << " gamma=" << gamma
     << " beta=" << beta << " mu=" << mu << " c_min=" << c_min << " c_max=" << c_max
     << " seed=" << seed << " mix_tolerance=" << mix_tolerance;
  return os.str();
}

std::vector<std::size_t> sample_power_law_degrees(const LfrParams& params) {
  params.validate();
  const std::size_t hi = params.k_max;

  // The expected mean grows monotonically with the cutoff; bisect for k_avg.
  double lo_c = 1.0;
  double hi_c = static_cast<double>(hi);
  if (TruncatedPowerLaw::at_cutoff(lo_c, hi, params.gamma).mean() >= params.k_avg) {
    hi_c = lo_c;
  } else {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo_c + hi_c);
      if (TruncatedPowerLaw::at_cutoff(mid, hi, params.gamma).mean() < params.k_avg) {
        lo_c = mid;
      } else {
        hi_c = mid;
      }
    }
  }
  const auto law = TruncatedPowerLaw::at_cutoff(hi_c, hi, params.gamma);
  const double expected = law.mean();
  if (std::abs(expected - params.k_avg) > kMeanDegreeTolerance * params.k_avg) {
    std::ostringstream os;
    os << "mean degree " << params.k_avg << " is unreachable with k_max=" << hi
       << " and gamma=" << params.gamma << " (closest expected mean " << expected << ")";
    throw GenerationError(os.str());
  }

  const auto w = law.weights();
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  auto rng = make_rng(params.seed);
  std::vector<std::size_t> degrees(params.n);
  for (std::size_t attempt = 0; attempt < kDegreeDraws; ++attempt) {
    for (auto& d : degrees) d = law.lo + pick(rng);
    const double mean = std::accumulate(degrees.begin(), degrees.end(), 0.0) /
                        static_cast<double>(params.n);
    if (std::abs(mean - params.k_avg) <= kMeanDegreeTolerance * params.k_avg) {
      const std::size_t sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
      if (sum % 2 != 0) {
        auto below = std::find_if(degrees.begin(), degrees.end(),
                                  [&](std::size_t d) { return d < hi; });
        if (below != degrees.end()) {
          ++*below;
        } else {
          --degrees.front();
        }
      }
      return degrees;
    }
  }
  throw GenerationError("could not draw a degree sequence within 5% of k_avg in " +
                        std::to_string(kDegreeDraws) + " attempts");
}

Graph configuration_model(std::span<const std::size_t> degrees, std::uint64_t seed,
                          ConfigurationModelReport* report) {
  const std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (total % 2 != 0) throw std::invalid_argument("configuration model: odd degree sum");

  std::vector<NodeId> residual;
  residual.reserve(total);
  for (NodeId v = 0; v < degrees.size(); ++v) residual.insert(residual.end(), degrees[v], v);

  auto rng = make_rng(seed);
  std::unordered_set<std::uint64_t> present;
  present.reserve(total);
  std::vector<Edge> edges;
  edges.reserve(total / 2);
  std::vector<NodeId> rejected;

  ConfigurationModelReport local;
  for (std::size_t round = 0; round <= kMatchingRounds && !residual.empty(); ++round) {
    ++local.rounds;
    std::shuffle(residual.begin(), residual.end(), rng);
    rejected.clear();
    for (std::size_t i = 0; i + 1 < residual.size(); i += 2) {
      const NodeId u = residual[i];
      const NodeId v = residual[i + 1];
      if (u == v || !present.insert(edge_key(u, v)).second) {
        rejected.push_back(u);
        rejected.push_back(v);
        continue;
      }
      edges.emplace_back(u, v);
    }
    residual.swap(rejected);
  }
  local.dropped_stubs = residual.size();
  if (report) *report = local;
  return Graph::from_edges(degrees.size(), edges);
}

std::vector<std::size_t> sample_community_sizes(const LfrParams& params,
                                                std::size_t min_largest) {
  params.validate();
  if (params.n < params.c_min) {
    throw GenerationError("n=" + std::to_string(params.n) + " is smaller than c_min=" +
                          std::to_string(params.c_min));
  }
  if (min_largest > params.c_max) {
    throw GenerationError("an internal degree of " + std::to_string(min_largest) +
                          " needs a community larger than c_max=" +
                          std::to_string(params.c_max));
  }

  const TruncatedPowerLaw law{params.c_min, params.c_max, 1.0, params.beta};
  const auto w = law.weights();
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  auto rng = make_rng(params.seed);

  std::vector<std::size_t> sizes;
  for (std::size_t attempt = 0; attempt < kSizeAttempts; ++attempt) {
    sizes.clear();
    std::size_t sum = 0;
    while (sum < params.n) {
      sizes.push_back(law.lo + pick(rng));
      sum += sizes.back();
    }
    const std::size_t excess = sum - params.n;
    if (sizes.back() < excess + params.c_min) continue;
    sizes.back() -= excess;
    if (*std::max_element(sizes.begin(), sizes.end()) < min_largest) continue;
    return sizes;
  }
  throw GenerationError("could not draw community sizes summing to n=" +
                        std::to_string(params.n) + " within [" + std::to_string(params.c_min) +
                        ", " + std::to_string(params.c_max) + "] after " +
                        std::to_string(kSizeAttempts) + " attempts");
}

std::size_t internal_degree_target(std::size_t degree, double mu) {
  // The epsilon keeps exact products such as 0.5 * 4 from rounding up.
  const double x = (1.0 - mu) * static_cast<double>(degree);
  return static_cast<std::size_t>(std::max(0.0, std::ceil(x - 1e-9)));
}

Partition assign_nodes_to_communities(std::span<const std::size_t> degrees,
                                      std::span<const std::size_t> sizes, double mu,
                                      std::uint64_t seed) {
  const std::size_t n = degrees.size();
  if (std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) != n) {
    throw std::invalid_argument("community sizes must sum to the node count");
  }

  // Communities by decreasing size: the eligible set for a target t is a prefix.
  std::vector<CommunityId> by_size(sizes.size());
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](CommunityId a, CommunityId b) { return sizes[a] > sizes[b]; });

  auto rng = make_rng(seed);
  std::vector<NodeId> queue(n);
  std::iota(queue.begin(), queue.end(), 0);
  std::shuffle(queue.begin(), queue.end(), rng);
  // Most constrained nodes first; ties keep the shuffled order. When the sizes
  // can host every target this never needs an eviction.
  std::vector<std::size_t> target_of(n);
  for (NodeId v = 0; v < n; ++v) target_of[v] = internal_degree_target(degrees[v], mu);
  std::stable_sort(queue.begin(), queue.end(),
                   [&](NodeId a, NodeId b) { return target_of[a] > target_of[b]; });

  std::vector<std::vector<NodeId>> members(sizes.size());
  std::vector<std::uint64_t> community_of(n, 0);
  std::vector<CommunityId> open;
  const std::size_t step_budget = 50 * n;
  std::size_t steps = 0;

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    if (++steps > step_budget) {
      throw GenerationError("community assignment deadlocked at node " + std::to_string(v) +
                            " (degree " + std::to_string(degrees[v]) + ")");
    }
    const std::size_t target = internal_degree_target(degrees[v], mu);
    std::size_t eligible = 0;
    while (eligible < by_size.size() && sizes[by_size[eligible]] >= target) ++eligible;
    if (eligible == 0) {
      throw GenerationError("node " + std::to_string(v) + " needs a community of size >= " +
                            std::to_string(target) + " but none exists");
    }

    open.clear();
    for (std::size_t i = 0; i < eligible; ++i) {
      const CommunityId c = by_size[i];
      if (members[c].size() < sizes[c]) open.push_back(c);
    }
    CommunityId chosen;
    if (!open.empty()) {
      chosen = open[uniform_index(rng, open.size())];
    } else {
      chosen = by_size[uniform_index(rng, eligible)];
      auto& m = members[chosen];
      const std::size_t slot = uniform_index(rng, m.size());
      queue.push_back(m[slot]);
      m[slot] = m.back();
      m.pop_back();
    }
    members[chosen].push_back(v);
    community_of[v] = chosen;
  }
  return Partition::from_labels(community_of);
}

Graph rewire_to_mixing(const Graph& graph, const Partition& partition, double mu,
                       double tolerance, std::uint64_t seed, RewireReport* report) {
  check_partition(graph, partition);
  if (graph.active_count() != graph.node_count()) {
    throw std::invalid_argument("rewire_to_mixing requires a graph without removed nodes");
  }
  RewireReport local;
  const std::size_t m = graph.edge_count();
  if (m == 0) {
    if (report) *report = local;
    return graph;
  }

  std::vector<Edge> edges = graph.edges();
  const auto md = static_cast<double>(m);
  auto is_inter = [&](NodeId a, NodeId b) {
    return partition.community_of(a) != partition.community_of(b);
  };

  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(2 * m);
  std::vector<std::vector<NodeId>> adj(graph.node_count());
  // Edge ids split by class, with each edge's position inside its class list.
  std::vector<std::size_t> inter_ids, intra_ids, slot(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto [u, v] = edges[e];
    index.emplace(edge_key(u, v), e);
    adj[u].push_back(v);
    adj[v].push_back(u);
    auto& list = is_inter(u, v) ? inter_ids : intra_ids;
    slot[e] = list.size();
    list.push_back(e);
  }

  auto error_of = [&](std::size_t inter) { return std::abs(static_cast<double>(inter) / md - mu); };
  local.initial_mixing = static_cast<double>(inter_ids.size()) / md;
  if (error_of(inter_ids.size()) <= tolerance) {
    local.final_mixing = local.initial_mixing;
    local.converged = true;
    if (report) *report = local;
    return graph;
  }

  auto unlink = [&](std::size_t e) {
    auto& list = is_inter(edges[e].first, edges[e].second) ? inter_ids : intra_ids;
    const std::size_t moved = list.back();
    list[slot[e]] = moved;
    slot[moved] = slot[e];
    list.pop_back();
  };
  auto link = [&](std::size_t e) {
    auto& list = is_inter(edges[e].first, edges[e].second) ? inter_ids : intra_ids;
    slot[e] = list.size();
    list.push_back(e);
  };
  auto drop_neighbor = [&](NodeId a, NodeId b) {
    auto& l = adj[a];
    *std::find(l.begin(), l.end(), b) = l.back();
    l.pop_back();
  };
  // Replaces edge e = (a, b) with (a, c).
  auto retarget = [&](std::size_t e, NodeId a, NodeId b, NodeId c) {
    unlink(e);
    index.erase(edge_key(a, b));
    drop_neighbor(a, b);
    drop_neighbor(b, a);
    edges[e] = {a, c};
    index.emplace(edge_key(a, c), e);
    adj[a].push_back(c);
    adj[c].push_back(a);
    link(e);
  };

  auto rng = make_rng(seed);
  const std::size_t budget = 200 * m;
  while (local.attempts < budget) {
    const std::size_t inter = inter_ids.size();
    const double error = error_of(inter);
    if (error <= tolerance) {
      local.converged = true;
      break;
    }
    ++local.attempts;
    const bool too_mixed = static_cast<double>(inter) / md > mu;
    const auto& pool = too_mixed ? inter_ids : intra_ids;
    if (pool.empty()) break;

    // First edge (a, b) from the class that must shrink, random orientation.
    const std::size_t e1 = pool[uniform_index(rng, pool.size())];
    NodeId a = edges[e1].first;
    NodeId b = edges[e1].second;
    if (bernoulli(rng, 0.5)) std::swap(a, b);

    // Second edge (c, d): for too much mixing, c is drawn from a's community so
    // that (a, c) becomes internal; otherwise (c, d) is any edge.
    NodeId c;
    NodeId d;
    if (too_mixed) {
      const auto peers = partition.members(partition.community_of(a));
      c = peers[uniform_index(rng, peers.size())];
      if (adj[c].empty()) continue;
      d = adj[c][uniform_index(rng, adj[c].size())];
    } else {
      const std::size_t e2 = static_cast<std::size_t>(uniform_index(rng, m));
      c = edges[e2].first;
      d = edges[e2].second;
      if (bernoulli(rng, 0.5)) std::swap(c, d);
    }

    if (c == a || c == b || d == a || d == b) continue;
    if (index.contains(edge_key(a, c)) || index.contains(edge_key(b, d))) continue;

    const long delta = static_cast<long>(is_inter(a, c)) + static_cast<long>(is_inter(b, d)) -
                       static_cast<long>(is_inter(a, b)) - static_cast<long>(is_inter(c, d));
    const auto next = static_cast<std::size_t>(static_cast<long>(inter) + delta);
    if (!(error_of(next) < error)) continue;

    // (a, b), (c, d) -> (a, c), (b, d)
    const std::size_t e2 = index.at(edge_key(c, d));
    retarget(e1, a, b, c);
    retarget(e2, d, c, b);
    ++local.swaps;
  }
  if (error_of(inter_ids.size()) <= tolerance) local.converged = true;
  local.final_mixing = static_cast<double>(inter_ids.size()) / md;
  if (report) *report = local;
  return Graph::from_edges(graph.node_count(), edges);
}

LfrNetwork generate_lfr(const LfrParams& params) {
  params.validate_for_generation();
  LfrNetwork out;

  LfrParams step = params;
  step.seed = derive_seed(params.seed, kDegreeStream);
  out.requested_degrees = sample_power_law_degrees(step);

  Graph matched = configuration_model(out.requested_degrees,
                                      derive_seed(params.seed, kMatchingStream), &out.matching);
  out.matched_degrees.resize(matched.node_count());
  for (NodeId v = 0; v < matched.node_count(); ++v) out.matched_degrees[v] = matched.degree(v);

  std::size_t largest_target = 0;
  for (std::size_t k : out.requested_degrees) {
    largest_target = std::max(largest_target, internal_degree_target(k, params.mu));
  }
  // Redraw sizes until every internal-degree target fits.
  std::vector<std::size_t> targets;
  for (std::size_t k : out.requested_degrees) targets.push_back(internal_degree_target(k, params.mu));
  const std::uint64_t size_seed = derive_seed(params.seed, kSizeStream);
  for (std::size_t attempt = 0;; ++attempt) {
    step.seed = attempt == 0 ? size_seed : derive_seed(size_seed, attempt);
    out.community_sizes = sample_community_sizes(step, largest_target);
    if (sizes_can_host(targets, out.community_sizes)) break;
    if (attempt + 1 >= kHostAttempts) {
      throw GenerationError("no community size draw can host every internal degree after " +
                            std::to_string(kHostAttempts) + " attempts");
    }
  }

  out.partition = assign_nodes_to_communities(out.requested_degrees, out.community_sizes,
                                              params.mu, derive_seed(params.seed, kAssignStream));
  // Reindex sizes to the partition's first-seen community numbering.
  for (CommunityId c = 0; c < out.partition.community_count(); ++c) {
    out.community_sizes[c] = out.partition.members(c).size();
  }
  out.graph = rewire_to_mixing(matched, out.partition, params.mu, params.mix_tolerance,
                               derive_seed(params.seed, kRewireStream), &out.rewiring);
  out.realized_mixing = out.graph.edge_count() > 0 ? global_mixing(out.graph, out.partition) : 0.0;
  return out;
}

}  // namespace netimmune
