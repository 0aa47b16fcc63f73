#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "netimmune/community.hpp"
#include "netimmune/graph.hpp"

namespace netimmune {

/// Raised when a generation step cannot satisfy its constraints.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Benchmark parameters. Defaults reproduce the reference setting used for the
/// synthetic experiments (n = 7500, <k> = 10, k_max = 180, gamma = 3, beta = 2,
/// community sizes in [5, 180]).
struct LfrParams {
  std::size_t n = 7500;
  double k_avg = 10.0;
  std::size_t k_max = 180;
  double gamma = 3.0;
  double beta = 2.0;
  double mu = 0.2;
  std::size_t c_min = 5;
  std::size_t c_max = 180;
  std::uint64_t seed = 0;
  double mix_tolerance = 0.01;

  /// Checks everything except the mixing bound. Throws std::invalid_argument.
  void validate() const;
  /// validate() plus 0 <= mu < mu_limit(n, c_max).
  void validate_for_generation() const;
  std::string describe() const;
};

/// Relative tolerance on the sample mean degree.
inline constexpr double kMeanDegreeTolerance = 0.05;

/// n degrees in [1, k_max] with P(k) ~ k^-gamma above a fractional lower cutoff
/// chosen so the expected mean equals k_avg. Redraws until the sample mean is
/// within 5% of k_avg; the degree sum is made even by incrementing one entry
/// below k_max (or, when every entry equals k_max, decrementing one).
std::vector<std::size_t> sample_power_law_degrees(const LfrParams& params);

struct ConfigurationModelReport {
  std::size_t rounds = 0;
  std::size_t dropped_stubs = 0;
};

/// Random stub matching. Pairs forming self-loops or multi-edges return to the
/// residual pool, which is reshuffled for at most 100 further rounds; what is
/// left afterwards is dropped. Requires an even degree sum.
Graph configuration_model(std::span<const std::size_t> degrees, std::uint64_t seed,
                          ConfigurationModelReport* report = nullptr);

/// Community sizes in [c_min, c_max] from P(s) ~ s^-beta summing to n, with
/// the largest size at least `min_largest`.
std::vector<std::size_t> sample_community_sizes(const LfrParams& params,
                                                std::size_t min_largest = 0);

/// Internal-degree target ceil((1 - mu) * k).
std::size_t internal_degree_target(std::size_t degree, double mu);

/// Places every node in a community whose size is at least its internal-degree
/// target, largest targets first. When all eligible communities are full a
/// random member of one is evicted and requeued. Throws GenerationError after 50 * n placement steps.
Partition assign_nodes_to_communities(std::span<const std::size_t> degrees,
                                      std::span<const std::size_t> sizes, double mu,
                                      std::uint64_t seed);

struct RewireReport {
  std::size_t attempts = 0;
  std::size_t swaps = 0;
  double initial_mixing = 0.0;
  double final_mixing = 0.0;
  bool converged = false;
};

/// Degree-preserving double-edge swaps, each accepted only if it keeps the
/// graph simple and strictly reduces |global_mixing - mu|. Stops once within
/// `tolerance` or after 200 * m attempts. Returns the input unchanged when it is
/// already within tolerance. The graph must have no removed nodes.
Graph rewire_to_mixing(const Graph& graph, const Partition& partition, double mu,
                       double tolerance, std::uint64_t seed, RewireReport* report = nullptr);

struct LfrNetwork {
  Graph graph;
  Partition partition;
  std::vector<std::size_t> requested_degrees;
  std::vector<std::size_t> community_sizes;
  /// Per-node degree after stub matching, before rewiring.
  std::vector<std::size_t> matched_degrees;
  ConfigurationModelReport matching;
  RewireReport rewiring;
  double realized_mixing = 0.0;
};

/// Degrees, configuration model, community sizes, assignment, rewiring.
/// Deterministic for a fixed params.seed.
LfrNetwork generate_lfr(const LfrParams& params);

}  // namespace netimmune
