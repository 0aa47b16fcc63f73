#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netimmune/centrality.hpp"
#include "netimmune/community.hpp"
#include "netimmune/epidemic.hpp"
#include "netimmune/graph.hpp"
#include "netimmune/immunization.hpp"
#include "netimmune/lfr.hpp"

namespace netimmune {

enum class Strategy : std::uint8_t { degree, betweenness, mod, commn, acquaintance, cbf };

std::string_view strategy_name(Strategy s);
/// Throws std::invalid_argument for an unknown name.
Strategy parse_strategy(std::string_view name);
std::vector<Strategy> all_strategies();
bool is_stochastic(Strategy s);
bool needs_partition(Strategy s);

struct StrategyOptions {
  bool sequential_degree = false;
  bool sequential_betweenness = false;
  bool sequential_mod = true;
  CommnParams commn;
  std::size_t acquaintance_threshold = 1;
  std::size_t cbf_max_walk = 0;
  bool cbf_backtrack = false;
  std::size_t cbf_max_failures = 0;
  unsigned workers = 1;
};

/// Builds a removal plan of `count` nodes (Commn uses `g` instead, since its
/// per-community budgets are not prefix-closed). Stochastic strategies use `seed`.
ImmunizationPlan build_plan(Strategy strategy, const Graph& graph, const Partition* partition,
                            double g, std::uint64_t seed, const StrategyOptions& options);

struct ExperimentConfig {
  /// Used when edge_list is empty.
  LfrParams lfr;
  std::filesystem::path edge_list;
  std::filesystem::path partition;
  /// Run label propagation when a file source has no partition file.
  bool detect_partition = false;

  std::vector<Strategy> strategies = all_strategies();
  double g_min = 0.0;
  double g_max = 0.5;
  double g_step = 0.05;

  SirParams sir;
  std::size_t networks = 10;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  StrategyOptions strategy_options;

  void validate() const;
  /// g_min, g_min + g_step, ... up to g_max, rounded to 1e-9.
  std::vector<double> g_grid() const;
  bool uses_lfr() const { return edge_list.empty(); }
};

struct ResultRow {
  std::size_t network_id = 0;
  std::string strategy;
  double g = 0.0;
  std::string metric;
  double mean = 0.0;
  double std = 0.0;
  std::size_t trials = 0;
};

struct ExperimentNetwork {
  Graph graph;
  std::optional<Partition> partition;
  std::uint64_t seed = 0;
};

/// LFR networks are generated with per-network seeds derived from the master
/// seed; a file source yields a single network.
std::vector<ExperimentNetwork> prepare_networks(const ExperimentConfig& config);

/// Seed hierarchy: master -> network -> strategy -> g -> trial.
std::uint64_t network_seed(std::uint64_t master, std::size_t network_id);
std::uint64_t strategy_seed(std::uint64_t network, Strategy s);
std::uint64_t g_seed(std::uint64_t strategy, double g);

/// Rows `total_infected` and `infected_fraction` (of non-removed nodes) per
/// network x strategy x g.
std::vector<ResultRow> sweep_infection(const ExperimentConfig& config);
std::vector<ResultRow> sweep_infection(const ExperimentConfig& config,
                                       const std::vector<ExperimentNetwork>& networks);

/// Rows `lcc_size` per network x strategy x g. Deterministic strategies are
/// evaluated once; stochastic ones average over `trials` plans.
std::vector<ResultRow> sweep_lcc(const ExperimentConfig& config);
std::vector<ResultRow> sweep_lcc(const ExperimentConfig& config,
                                 const std::vector<ExperimentNetwork>& networks);

}  // namespace netimmune
