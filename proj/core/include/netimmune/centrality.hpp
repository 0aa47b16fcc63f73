#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "netimmune/community.hpp"
#include "netimmune/graph.hpp"

namespace netimmune {

/// Score per node id. Only active nodes carry a score; `present` marks them.
struct CentralityScores {
  std::string measure;
  std::vector<double> value;
  std::vector<std::uint8_t> present;

  CentralityScores() = default;
  CentralityScores(std::string name, const Graph& graph);

  bool has(NodeId v) const { return v < present.size() && present[v] != 0; }
  double at(NodeId v) const;
  void set(NodeId v, double score);
  std::size_t size() const;
};

/// Total order used for every ranking: higher score first, then lower id.
inline bool ranks_before(const CentralityScores& s, NodeId a, NodeId b) {
  if (s.value[a] != s.value[b]) return s.value[a] > s.value[b];
  return a < b;
}

/// Scored nodes sorted by ranks_before.
std::vector<NodeId> rank(const CentralityScores& scores);

/// Highest-ranked scored node, or kInvalidNode when nothing is scored.
NodeId top_node(const CentralityScores& scores);

CentralityScores degree_centrality(const Graph& graph);

/// Unnormalized betweenness over unordered pairs, endpoints excluded:
/// BC(u) = sum_{a<b, a,b != u} sigma_ab(u) / sigma_ab. Accumulated per source
/// in fixed blocks so the result does not depend on `workers`.
CentralityScores betweenness_centrality(const Graph& graph, unsigned workers = 1);

/// Leading eigenvector of a community weighted network.
struct LeadingEigenvector {
  std::vector<double> vector;  // unit norm, nonnegative
  double value = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Shifted power iteration from the uniform vector until
/// ||W u - lambda u|| <= tolerance * max(1, lambda).
LeadingEigenvector leading_eigenvector(const CommunityWeightedNetwork& net,
                                       double tolerance = 1e-10,
                                       std::size_t max_iterations = 1'000'000);

/// score(k) = 2 u_K sum_{I != K} d_kI u_I with u the leading eigenvector of the
/// community weighted network. When no inter-community links remain, score(k)
/// falls back to the intra-community degree of k.
CentralityScores mod_centrality(const Graph& graph, const Partition& partition);

struct CommnParams {
  /// Scale R. Unset means the maximum in-degree of each community (at least 1).
  std::optional<double> scale;
};

/// Normalizers and cohesion of one community as used by the Commn score.
struct CommunityProfile {
  double mu = 0.0;
  std::size_t max_in = 0;
  std::size_t max_out = 0;
  double scale = 1.0;
};

CommunityProfile community_profile(const Graph& graph, const Partition& partition,
                                   CommunityId c, const CommnParams& params = {});

/// CC(i) = (1 + mu_C) * (k_in / max_in * R) + (1 - mu_C) * (k_out / max_out * R)^2,
/// where a ratio with a zero maximum counts as 0.
double commn_score(std::size_t k_in, std::size_t k_out, const CommunityProfile& profile);

CentralityScores commn_centrality(const Graph& graph, const Partition& partition,
                                  const CommnParams& params = {});

/// Commn scores for the active members of a single community only.
CentralityScores commn_centrality_in(const Graph& graph, const Partition& partition,
                                     CommunityId c, const CommnParams& params = {});

}  // namespace netimmune
