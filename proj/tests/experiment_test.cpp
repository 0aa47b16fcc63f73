#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "netimmune/experiment.hpp"
#include "netimmune/random.hpp"
#include "netimmune/report.hpp"
#include "test_support.hpp"

namespace netimmune {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.lfr.n = 200;
  c.lfr.k_max = 20;
  c.lfr.c_min = 10;
  c.lfr.c_max = 40;
  c.lfr.mu = 0.2;
  c.networks = 2;
  c.trials = 4;
  c.g_min = 0.0;
  c.g_max = 0.3;
  c.g_step = 0.1;
  c.seed = 11;
  return c;
}

std::vector<ExperimentNetwork> single_network(Graph g, std::optional<Partition> p = std::nullopt) {
  std::vector<ExperimentNetwork> nets;
  nets.push_back({std::move(g), std::move(p), 1});
  return nets;
}

const ResultRow& find_row(const std::vector<ResultRow>& rows, std::size_t net,
                          std::string_view strategy, double g, std::string_view metric) {
  for (const auto& r : rows) {
    if (r.network_id == net && r.strategy == strategy && std::abs(r.g - g) < 1e-12 &&
        r.metric == metric) {
      return r;
    }
  }
  throw std::runtime_error("row not found");
}

TEST(StrategyNames, RoundTrip) {
  for (Strategy s : all_strategies()) EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  EXPECT_THROW(parse_strategy("random"), std::invalid_argument);
  EXPECT_TRUE(is_stochastic(Strategy::cbf));
  EXPECT_FALSE(is_stochastic(Strategy::mod));
  EXPECT_TRUE(needs_partition(Strategy::commn));
  EXPECT_FALSE(needs_partition(Strategy::betweenness));
}

TEST(Grid, InclusiveAndRounded) {
  ExperimentConfig c;
  c.g_min = 0.0;
  c.g_max = 0.5;
  c.g_step = 0.05;
  const auto grid = c.g_grid();
  ASSERT_EQ(grid.size(), 11u);
  EXPECT_EQ(grid[3], 0.15);
  EXPECT_EQ(grid.back(), 0.5);
  c.g_min = c.g_max = 0.2;
  EXPECT_EQ(c.g_grid(), std::vector<double>{0.2});
  c.g_max = 1.1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Seeds, HierarchyIsDistinct) {
  const auto a = network_seed(5, 0);
  const auto b = network_seed(5, 1);
  EXPECT_NE(a, b);
  EXPECT_NE(strategy_seed(a, Strategy::degree), strategy_seed(a, Strategy::cbf));
  EXPECT_NE(g_seed(a, 0.1), g_seed(a, 0.15));
  EXPECT_EQ(g_seed(a, 0.1), g_seed(a, 0.1000000001));
}

TEST(BuildPlan, MissingPartitionThrows) {
  const auto g = testing::bridged_triangles();
  EXPECT_THROW(build_plan(Strategy::mod, g, nullptr, 0.2, 0, {}), std::invalid_argument);
  EXPECT_THROW(build_plan(Strategy::commn, g, nullptr, 0.2, 0, {}), std::invalid_argument);
  EXPECT_NO_THROW(build_plan(Strategy::degree, g, nullptr, 0.2, 0, {}));
}

TEST(BuildPlan, SizesFollowTheRemovalCount) {
  const auto g = testing::bridged_triangles();
  const auto p = testing::partition_of({0, 0, 0, 1, 1, 1});
  for (Strategy s : all_strategies()) {
    const auto plan = build_plan(s, g, &p, 0.5, 3, {});
    EXPECT_EQ(plan.strategy, strategy_name(s));
    if (s == Strategy::cbf) {
      // The walk may run out of qualifying candidates on a tiny graph.
      EXPECT_LE(plan.removal_order.size(), 3u);
    } else {
      EXPECT_EQ(plan.removal_order.size(), 3u) << strategy_name(s);
    }
  }
}

TEST(SweepInfection, RowCountAndOrder) {
  auto c = small_config();
  const auto rows = sweep_infection(c);
  EXPECT_EQ(rows.size(), c.networks * c.strategies.size() * c.g_grid().size() * 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    EXPECT_LE(a.network_id, b.network_id);
  }
  for (const auto& r : rows) {
    EXPECT_EQ(r.trials, c.trials);
    if (r.metric == "infected_fraction") {
      EXPECT_GE(r.mean, 0.0);
      EXPECT_LE(r.mean, 1.0);
    }
  }
}

TEST(SweepInfection, ZeroCoverageRowsAreUnimmunizedRuns) {
  auto c = small_config();
  c.networks = 1;
  const auto nets = prepare_networks(c);
  const auto rows = sweep_infection(c, nets);
  for (Strategy s : c.strategies) {
    std::vector<double> ti;
    for (std::size_t t = 0; t < c.trials; ++t) {
      SirParams p = c.sir;
      p.seed = derive_seed(g_seed(strategy_seed(nets[0].seed, s), 0.0), t);
      ti.push_back(static_cast<double>(run_sir(nets[0].graph, p).total_infected));
    }
    const auto expected = mean_std(ti);
    const auto& r = find_row(rows, 0, strategy_name(s), 0.0, "total_infected");
    EXPECT_EQ(r.mean, expected.mean) << strategy_name(s);
    EXPECT_EQ(r.std, expected.std) << strategy_name(s);
    EXPECT_EQ(find_row(rows, 0, strategy_name(s), 0.0, "infected_fraction").mean,
              expected.mean / 200.0);
  }
}

TEST(SweepInfection, FullCoverageLeavesNothingToInfect) {
  ExperimentConfig c;
  c.strategies = {Strategy::degree, Strategy::betweenness, Strategy::acquaintance, Strategy::cbf};
  c.g_min = c.g_max = 1.0;
  c.trials = 3;
  c.sir.initial_infected = 1;
  const auto rows = sweep_infection(c, single_network(testing::complete_graph(12)));
  for (const auto& r : rows) {
    if (r.strategy == "degree" || r.strategy == "betweenness") {
      EXPECT_EQ(r.mean, 0.0) << r.strategy << " " << r.metric;
    }
  }
}

TEST(SweepInfection, IdenticalAcrossWorkerCounts) {
  auto c = small_config();
  c.workers = 1;
  std::ostringstream a;
  emit_csv(sweep_infection(c), a);
  for (unsigned w : {2u, 4u, 8u}) {
    c.workers = w;
    std::ostringstream b;
    emit_csv(sweep_infection(c), b);
    EXPECT_EQ(a.str(), b.str()) << w << " workers";
  }
}

TEST(SweepInfection, MissingPartitionThrows) {
  ExperimentConfig c;
  c.strategies = {Strategy::mod};
  EXPECT_THROW(sweep_infection(c, single_network(testing::complete_graph(5))),
               std::invalid_argument);
}

TEST(SweepInfection, CurvesDoNotRiseBeyondNoise) {
  auto c = small_config();
  c.trials = 30;
  c.g_max = 0.5;
  const auto rows = sweep_infection(c);
  const auto grid = c.g_grid();
  // Average over networks; the tolerance is one pooled standard deviation.
  auto averaged = [&](std::string_view s, double g) {
    double mean = 0, var = 0;
    for (std::size_t n = 0; n < c.networks; ++n) {
      const auto& r = find_row(rows, n, s, g, "total_infected");
      mean += r.mean;
      var += r.std * r.std;
    }
    const auto k = static_cast<double>(c.networks);
    return std::make_pair(mean / k, std::sqrt(var / k));
  };
  for (Strategy s : c.strategies) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const auto [prev, prev_sd] = averaged(strategy_name(s), grid[i - 1]);
      const auto [cur, cur_sd] = averaged(strategy_name(s), grid[i]);
      const double pooled = std::sqrt((prev_sd * prev_sd + cur_sd * cur_sd) / 2.0);
      EXPECT_LE(cur, prev + pooled + 1e-9) << strategy_name(s) << " g=" << grid[i];
    }
  }
}

TEST(SweepLcc, CompleteGraph) {
  ExperimentConfig c;
  c.strategies = {Strategy::degree, Strategy::acquaintance};
  c.g_min = c.g_max = 0.2;
  c.trials = 5;
  const auto rows = sweep_lcc(c, single_network(testing::complete_graph(50)));
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.metric, "lcc_size");
    EXPECT_EQ(r.mean, 40.0);
    EXPECT_EQ(r.std, 0.0);
  }
  EXPECT_EQ(find_row(rows, 0, "degree", 0.2, "lcc_size").trials, 1u);
  EXPECT_EQ(find_row(rows, 0, "acquaintance", 0.2, "lcc_size").trials, 5u);
}

TEST(SweepLcc, CbfFindsNoBridgeInsideAClique) {
  ExperimentConfig c;
  c.strategies = {Strategy::cbf};
  c.g_min = c.g_max = 0.2;
  c.trials = 3;
  const auto rows = sweep_lcc(c, single_network(testing::complete_graph(20)));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mean, 20.0);
}

TEST(SweepLcc, BridgeRemovalSplitsTheGraph) {
  ExperimentConfig c;
  c.strategies = {Strategy::betweenness, Strategy::commn};
  c.g_min = 0.0;
  c.g_max = 1.0 / 6.0 + 1e-9;
  c.g_step = 1.0 / 6.0;
  const auto rows = sweep_lcc(c, single_network(testing::bridged_triangles(),
                                                testing::partition_of({0, 0, 0, 1, 1, 1})));
  const auto grid = c.g_grid();
  ASSERT_EQ(grid.size(), 2u);
  EXPECT_EQ(find_row(rows, 0, "betweenness", grid[0], "lcc_size").mean, 6.0);
  EXPECT_EQ(find_row(rows, 0, "betweenness", grid[1], "lcc_size").mean, 3.0);
  EXPECT_EQ(find_row(rows, 0, "commn", grid[1], "lcc_size").mean, 3.0);
}

TEST(SweepLcc, IdenticalAcrossWorkerCounts) {
  auto c = small_config();
  std::ostringstream a, b;
  c.workers = 1;
  emit_csv(sweep_lcc(c), a);
  c.workers = 4;
  emit_csv(sweep_lcc(c), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(PrepareNetworks, LfrNetworksCarryTheirPartition) {
  auto c = small_config();
  const auto nets = prepare_networks(c);
  ASSERT_EQ(nets.size(), 2u);
  for (std::size_t i = 0; i < nets.size(); ++i) {
    EXPECT_EQ(nets[i].graph.node_count(), 200u);
    ASSERT_TRUE(nets[i].partition.has_value());
    EXPECT_EQ(nets[i].seed, network_seed(c.seed, i));
  }
}

}  // namespace
}  // namespace netimmune
