#include "netimmune/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "netimmune/io.hpp"
#include "netimmune/parallel.hpp"
#include "netimmune/random.hpp"

namespace netimmune {

namespace {

constexpr std::array<std::string_view, 6> kStrategyNames = {
    "degree", "betweenness", "mod", "commn", "acquaintance", "cbf"};

// Offsets separating g-level seeds from trial-level plan seeds under one strategy.
constexpr std::uint64_t kGSeedOffset = std::uint64_t{1} << 32;

}  // namespace

std::string_view strategy_name(Strategy s) { return kStrategyNames[static_cast<std::size_t>(s)]; }

Strategy parse_strategy(std::string_view name) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == name) return static_cast<Strategy>(i);
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::vector<Strategy> all_strategies() {
  return {Strategy::degree, Strategy::betweenness, Strategy::mod,
          Strategy::commn,  Strategy::acquaintance, Strategy::cbf};
}

bool is_stochastic(Strategy s) { return s == Strategy::acquaintance || s == Strategy::cbf; }

bool needs_partition(Strategy s) { return s == Strategy::mod || s == Strategy::commn; }

ImmunizationPlan build_plan(Strategy strategy, const Graph& graph, const Partition* partition,
                            double g, std::uint64_t seed, const StrategyOptions& options) {
  if (needs_partition(strategy) && partition == nullptr) {
    throw std::invalid_argument("strategy '" + std::string(strategy_name(strategy)) +
                                "' needs a community partition");
  }
  const std::size_t count = removal_count(graph, g);
  const StochasticParams stochastic{seed, options.acquaintance_threshold, options.cbf_max_walk,
                                    options.cbf_backtrack, options.cbf_max_failures};

  ImmunizationPlan plan;
  switch (strategy) {
    case Strategy::degree:
      plan = options.sequential_degree
                 ? immunize_sequential(graph, degree_centrality, count)
                 : immunize_static(graph, degree_centrality(graph), count);
      break;
    case Strategy::betweenness: {
      const unsigned workers = options.workers;
      auto measure = [workers](const Graph& h) { return betweenness_centrality(h, workers); };
      plan = options.sequential_betweenness ? immunize_sequential(graph, measure, count)
                                            : immunize_static(graph, measure(graph), count);
      break;
    }
    case Strategy::mod: {
      auto measure = [partition](const Graph& h) { return mod_centrality(h, *partition); };
      plan = options.sequential_mod ? immunize_sequential(graph, measure, count)
                                    : immunize_static(graph, measure(graph), count);
      break;
    }
    case Strategy::commn:
      plan = immunize_commn(graph, *partition, g, options.commn);
      break;
    case Strategy::acquaintance:
      plan = immunize_acquaintance(graph, count, stochastic);
      break;
    case Strategy::cbf:
      plan = immunize_cbf(graph, count, stochastic);
      break;
  }
  plan.strategy = std::string(strategy_name(strategy));
  return plan;
}

void ExperimentConfig::validate() const {
  if (strategies.empty()) throw std::invalid_argument("at least one strategy is required");
  if (!(g_min >= 0.0 && g_max <= 1.0 && g_min <= g_max)) {
    throw std::invalid_argument("g grid must satisfy 0 <= g_min <= g_max <= 1");
  }
  if (g_max > g_min && !(g_step > 0.0)) throw std::invalid_argument("g_step must be positive");
  if (networks == 0) throw std::invalid_argument("networks must be at least 1");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  sir.validate();
  if (uses_lfr()) lfr.validate_for_generation();
  if (strategy_options.acquaintance_threshold == 0) {
    throw std::invalid_argument("acquaintance threshold must be at least 1");
  }
}

std::vector<double> ExperimentConfig::g_grid() const {
  std::vector<double> grid;
  const std::size_t steps =
      g_max > g_min ? static_cast<std::size_t>(std::floor((g_max - g_min) / g_step + 1e-9)) : 0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double g = g_min + static_cast<double>(i) * g_step;
    grid.push_back(std::min(1.0, std::round(g * 1e9) / 1e9));
  }
  return grid;
}

std::uint64_t network_seed(std::uint64_t master, std::size_t network_id) {
  return derive_seed(master, network_id);
}

std::uint64_t strategy_seed(std::uint64_t network, Strategy s) {
  return derive_seed(network, static_cast<std::uint64_t>(s) + 1);
}

std::uint64_t g_seed(std::uint64_t strategy, double g) {
  return derive_seed(strategy, kGSeedOffset + static_cast<std::uint64_t>(std::llround(g * 1e4)));
}

std::vector<ExperimentNetwork> prepare_networks(const ExperimentConfig& config) {
  config.validate();
  std::vector<ExperimentNetwork> out;
  if (config.uses_lfr()) {
    out.resize(config.networks);
    parallel_for(config.networks, config.workers, [&](std::size_t i) {
      LfrParams p = config.lfr;
      p.seed = network_seed(config.seed, i);
      auto net = generate_lfr(p);
      out[i] = {std::move(net.graph), std::move(net.partition), p.seed};
    });
    return out;
  }

  auto labeled = load_edge_list(config.edge_list);
  ExperimentNetwork net{labeled.graph, std::nullopt, network_seed(config.seed, 0)};
  if (!config.partition.empty()) {
    net.partition = load_partition(config.partition, labeled);
  } else if (config.detect_partition) {
    net.partition = detect_communities_label_propagation(net.graph, {net.seed, 100});
  }
  out.push_back(std::move(net));
  return out;
}

namespace {

/// Removal orders per (network, strategy). Commn has one order per g value,
/// stochastic strategies one per trial, the rest a single order for max g
/// whose prefixes serve the smaller g values.
struct PlanTable {
  std::vector<std::vector<std::vector<std::vector<NodeId>>>> orders;  // [net][strategy][variant]
  std::vector<double> grid;

  std::span<const NodeId> removal(const Graph& graph, std::size_t net, std::size_t s,
                                  Strategy strategy, std::size_t gi, std::size_t trial) const {
    const auto& variants = orders[net][s];
    if (strategy == Strategy::commn) return variants[gi];
    const auto& order = variants[is_stochastic(strategy) ? trial : 0];
    const std::size_t len = std::min(removal_count(graph, grid[gi]), order.size());
    return std::span<const NodeId>(order.data(), len);
  }
};

std::size_t variant_count(Strategy s, std::size_t grid_size, std::size_t trials) {
  if (s == Strategy::commn) return grid_size;
  return is_stochastic(s) ? trials : 1;
}

void require_partitions(const ExperimentConfig& config,
                        const std::vector<ExperimentNetwork>& networks) {
  for (Strategy s : config.strategies) {
    if (!needs_partition(s)) continue;
    for (const auto& net : networks) {
      if (!net.partition) {
        throw std::invalid_argument("strategy '" + std::string(strategy_name(s)) +
                                    "' needs a community partition");
      }
    }
  }
}

PlanTable build_plans(const ExperimentConfig& config,
                      const std::vector<ExperimentNetwork>& networks) {
  config.validate();
  require_partitions(config, networks);
  PlanTable table;
  table.grid = config.g_grid();
  const double g_top = table.grid.back();

  struct Task {
    std::size_t net, s, variant;
  };
  std::vector<Task> tasks;
  table.orders.resize(networks.size());
  for (std::size_t n = 0; n < networks.size(); ++n) {
    table.orders[n].resize(config.strategies.size());
    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
      const std::size_t v = variant_count(config.strategies[s], table.grid.size(), config.trials);
      table.orders[n][s].resize(v);
      for (std::size_t i = 0; i < v; ++i) tasks.push_back({n, s, i});
    }
  }

  StrategyOptions options = config.strategy_options;
  options.workers = 1;  // parallelism lives at the task level
  parallel_for(tasks.size(), config.workers, [&](std::size_t k) {
    const auto [n, s, variant] = tasks[k];
    const Strategy strategy = config.strategies[s];
    const auto& net = networks[n];
    const double g = strategy == Strategy::commn ? table.grid[variant] : g_top;
    const std::uint64_t seed = derive_seed(strategy_seed(net.seed, strategy), variant);
    const Partition* partition = net.partition ? &*net.partition : nullptr;
    table.orders[n][s][variant] =
        build_plan(strategy, net.graph, partition, g, seed, options).removal_order;
  });
  return table;
}

void sort_rows(std::vector<ResultRow>& rows, const std::vector<Strategy>& strategies) {
  auto position = [&](const std::string& name) {
    return std::find(strategies.begin(), strategies.end(), parse_strategy(name)) -
           strategies.begin();
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const ResultRow& a, const ResultRow& b) {
    return std::make_tuple(a.network_id, position(a.strategy), a.g, a.metric) <
           std::make_tuple(b.network_id, position(b.strategy), b.g, b.metric);
  });
}

}  // namespace

std::vector<ResultRow> sweep_infection(const ExperimentConfig& config) {
  return sweep_infection(config, prepare_networks(config));
}

std::vector<ResultRow> sweep_infection(const ExperimentConfig& config,
                                       const std::vector<ExperimentNetwork>& networks) {
  const PlanTable plans = build_plans(config, networks);
  const auto& grid = plans.grid;
  const std::size_t S = config.strategies.size();
  const std::size_t G = grid.size();
  const std::size_t T = config.trials;
  const std::size_t jobs = networks.size() * S * G * T;

  std::vector<double> infected(jobs, 0.0);
  std::vector<double> fraction(jobs, 0.0);
  parallel_for(jobs, config.workers, [&](std::size_t k) {
    const std::size_t t = k % T;
    const std::size_t gi = (k / T) % G;
    const std::size_t s = (k / (T * G)) % S;
    const std::size_t n = k / (T * G * S);
    const Strategy strategy = config.strategies[s];
    const auto& net = networks[n];
    const Graph reduced = net.graph.remove_nodes(plans.removal(net.graph, n, s, strategy, gi, t));
    if (reduced.active_count() == 0) return;

    SirParams sir = config.sir;
    sir.seed = derive_seed(g_seed(strategy_seed(net.seed, strategy), grid[gi]), t);
    const auto run = run_sir(reduced, sir);
    infected[k] = static_cast<double>(run.total_infected);
    fraction[k] = infected[k] / static_cast<double>(reduced.active_count());
  });

  std::vector<ResultRow> rows;
  rows.reserve(networks.size() * S * G * 2);
  for (std::size_t n = 0; n < networks.size(); ++n) {
    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t gi = 0; gi < G; ++gi) {
        const std::size_t base = ((n * S + s) * G + gi) * T;
        const std::vector<double> ti(infected.begin() + static_cast<std::ptrdiff_t>(base),
                                     infected.begin() + static_cast<std::ptrdiff_t>(base + T));
        const std::vector<double> fr(fraction.begin() + static_cast<std::ptrdiff_t>(base),
                                     fraction.begin() + static_cast<std::ptrdiff_t>(base + T));
        const auto name = std::string(strategy_name(config.strategies[s]));
        const auto a = mean_std(ti);
        const auto b = mean_std(fr);
        rows.push_back({n, name, grid[gi], "infected_fraction", b.mean, b.std, T});
        rows.push_back({n, name, grid[gi], "total_infected", a.mean, a.std, T});
      }
    }
  }
  sort_rows(rows, config.strategies);
  return rows;
}

std::vector<ResultRow> sweep_lcc(const ExperimentConfig& config) {
  return sweep_lcc(config, prepare_networks(config));
}

std::vector<ResultRow> sweep_lcc(const ExperimentConfig& config,
                                 const std::vector<ExperimentNetwork>& networks) {
  const PlanTable plans = build_plans(config, networks);
  const auto& grid = plans.grid;
  const std::size_t S = config.strategies.size();
  const std::size_t G = grid.size();
  const std::size_t T = config.trials;
  const std::size_t jobs = networks.size() * S * G * T;

  // Deterministic strategies only fill slot t = 0.
  std::vector<double> lcc(jobs, 0.0);
  parallel_for(jobs, config.workers, [&](std::size_t k) {
    const std::size_t t = k % T;
    const std::size_t gi = (k / T) % G;
    const std::size_t s = (k / (T * G)) % S;
    const std::size_t n = k / (T * G * S);
    const Strategy strategy = config.strategies[s];
    if (!is_stochastic(strategy) && t > 0) return;
    const auto& net = networks[n];
    const Graph reduced = net.graph.remove_nodes(plans.removal(net.graph, n, s, strategy, gi, t));
    lcc[k] = static_cast<double>(largest_connected_component_size(reduced));
  });

  std::vector<ResultRow> rows;
  rows.reserve(networks.size() * S * G);
  for (std::size_t n = 0; n < networks.size(); ++n) {
    for (std::size_t s = 0; s < S; ++s) {
      const Strategy strategy = config.strategies[s];
      const std::size_t used = is_stochastic(strategy) ? T : 1;
      for (std::size_t gi = 0; gi < G; ++gi) {
        const std::size_t base = ((n * S + s) * G + gi) * T;
        const std::vector<double> xs(lcc.begin() + static_cast<std::ptrdiff_t>(base),
                                     lcc.begin() + static_cast<std::ptrdiff_t>(base + used));
        const auto m = mean_std(xs);
        rows.push_back({n, std::string(strategy_name(strategy)), grid[gi], "lcc_size", m.mean,
                        m.std, used});
      }
    }
  }
  sort_rows(rows, config.strategies);
  return rows;
}

}  // namespace netimmune
