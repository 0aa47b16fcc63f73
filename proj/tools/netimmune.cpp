#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netimmune/centrality.hpp"
#include "netimmune/community.hpp"
#include "netimmune/epidemic.hpp"
#include "netimmune/experiment.hpp"
#include "netimmune/immunization.hpp"
#include "netimmune/io.hpp"
#include "netimmune/lfr.hpp"
#include "netimmune/report.hpp"

namespace fs = std::filesystem;
using namespace netimmune;

namespace {

/// Writes to stdout for "-" and to a file otherwise.
class Sink {
 public:
  explicit Sink(const std::string& target) {
    if (target != "-") file_ = open_output(target);
  }
  std::ostream& get() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }

 private:
  std::optional<std::ofstream> file_;
};

// Reads `key = value` lines and returns them as `--key=value` arguments for every
// key whose flag is not already on the command line.
std::vector<std::string> config_arguments(const fs::path& path,
                                          const std::vector<std::string>& given) {
  auto in = open_input(path);
  std::vector<std::string> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path.string(), number, "expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\"");
      const auto e = s.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw ParseError(path.string(), number, "empty key");
    const std::string flag = "--" + key;
    const bool on_command_line = std::any_of(given.begin(), given.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!on_command_line) out.push_back(flag + "=" + value);
  }
  return out;
}

void add_lfr_options(CLI::App* cmd, LfrParams& p) {
  cmd->add_option("--n", p.n, "Number of nodes")->capture_default_str();
  cmd->add_option("--k-avg", p.k_avg, "Average degree")->capture_default_str();
  cmd->add_option("--k-max", p.k_max, "Maximum degree")->capture_default_str();
  cmd->add_option("--gamma", p.gamma, "Degree exponent")->capture_default_str();
  cmd->add_option("--beta", p.beta, "Community size exponent")->capture_default_str();
  cmd->add_option("--mu", p.mu, "Mixing parameter")->capture_default_str();
  cmd->add_option("--c-min", p.c_min, "Smallest community")->capture_default_str();
  cmd->add_option("--c-max", p.c_max, "Largest community")->capture_default_str();
  cmd->add_option("--mix-tolerance", p.mix_tolerance, "Rewiring stop tolerance")
      ->capture_default_str();
}

void add_sir_options(CLI::App* cmd, SirParams& p) {
  cmd->add_option("--lambda", p.lambda, "Transmission probability")->capture_default_str();
  cmd->add_option("--sigma", p.sigma, "Recovery probability")->capture_default_str();
  cmd->add_option("--initial-infected", p.initial_infected,
                  "Initial infected count (0 = use --initial-fraction)")
      ->capture_default_str();
  cmd->add_option("--initial-fraction", p.initial_fraction, "Initial infected fraction")
      ->capture_default_str();
  cmd->add_option("--max-steps", p.max_steps, "Step cap per run")->capture_default_str();
}

struct Loaded {
  LabeledGraph graph;
  std::optional<Partition> partition;
};

Loaded load(const std::string& graph_path, const std::string& partition_path) {
  Loaded out{load_edge_list(graph_path), std::nullopt};
  if (!partition_path.empty()) out.partition = load_partition(partition_path, out.graph);
  return out;
}

double g_for_count(const Graph& graph, std::size_t count) {
  if (count > graph.active_count()) throw std::invalid_argument("count exceeds node count");
  return graph.active_count() == 0
             ? 0.0
             : static_cast<double>(count) / static_cast<double>(graph.active_count());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community-aware immunization and SIR epidemic experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  app.add_option("--config", config_path,
                 "Flat key=value file; keys are flag names, command-line flags win");

  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string graph_path, partition_path, output = "-";

  // generate
  auto* generate = app.add_subcommand("generate", "Generate an LFR benchmark network");
  LfrParams lfr;
  std::string communities_path;
  add_lfr_options(generate, lfr);
  generate->add_option("--seed", seed, "Random seed")->capture_default_str();
  generate->add_option("--output,--edges", output, "Edge list output ('-' for stdout)");
  generate->add_option("--communities", communities_path, "Community file output");

  // detect
  auto* detect = app.add_subcommand("detect", "Detect communities by label propagation");
  std::size_t max_sweeps = 100;
  detect->add_option("--graph", graph_path, "Edge list")->required();
  detect->add_option("--seed", seed, "Random seed")->capture_default_str();
  detect->add_option("--max-sweeps", max_sweeps, "Sweep cap")->capture_default_str();
  detect->add_option("--output", output, "Community file output ('-' for stdout)");

  // partition-stats
  auto* stats = app.add_subcommand("partition-stats", "Per-community size and mixing");
  stats->add_option("--graph", graph_path, "Edge list")->required();
  stats->add_option("--partition", partition_path, "Community file")->required();
  stats->add_option("--output", output, "CSV output ('-' for stdout)");

  // centrality
  auto* centrality = app.add_subcommand("centrality", "Score and rank every node");
  std::string measure = "degree";
  std::optional<double> scale;
  centrality->add_option("--graph", graph_path, "Edge list")->required();
  centrality->add_option("--measure", measure, "degree | betweenness | mod | commn")
      ->check(CLI::IsMember({"degree", "betweenness", "mod", "commn"}))
      ->capture_default_str();
  centrality->add_option("--partition", partition_path, "Community file (mod, commn)");
  centrality->add_option("--scale", scale, "Commn scale R (>= 1); default max in-degree");
  centrality->add_option("--workers", workers, "Worker threads")->capture_default_str();
  centrality->add_option("--output", output, "CSV output ('-' for stdout)");

  // immunize
  auto* immunize = app.add_subcommand("immunize", "Build a removal plan");
  std::string strategy = "degree";
  std::optional<double> g;
  std::optional<std::size_t> count;
  StrategyOptions options;
  immunize->add_option("--graph", graph_path, "Edge list")->required();
  immunize->add_option("--strategy", strategy,
                       "degree | betweenness | mod | commn | acquaintance | cbf")
      ->capture_default_str();
  auto* g_opt = immunize->add_option("--g", g, "Removed fraction");
  immunize->add_option("--count", count, "Removed node count")->excludes(g_opt);
  immunize->add_option("--partition", partition_path, "Community file (mod, commn)");
  immunize->add_option("--seed", seed, "Random seed (acquaintance, cbf)")->capture_default_str();
  immunize->add_option("--workers", workers, "Worker threads")->capture_default_str();

  auto add_strategy_options = [&](CLI::App* cmd) {
    cmd->add_flag("--sequential-degree", options.sequential_degree,
                  "Recompute degree after each removal");
    cmd->add_flag("--sequential-betweenness", options.sequential_betweenness,
                  "Recompute betweenness after each removal");
    cmd->add_flag("--sequential-mod", options.sequential_mod,
                  "Recompute Mod after each removal")
        ->capture_default_str();
    cmd->add_option("--scale", options.commn.scale, "Commn scale R (>= 1)");
    cmd->add_option("--acquaintance-threshold", options.acquaintance_threshold,
                    "Draws before an acquaintance is immunized")
        ->capture_default_str();
    cmd->add_option("--cbf-max-walk", options.cbf_max_walk, "CBF walk cap (0 = 10 n)")
        ->capture_default_str();
    cmd->add_flag("--cbf-backtrack", options.cbf_backtrack,
                  "Let CBF walks step back to the previous node");
    cmd->add_option("--cbf-max-failures", options.cbf_max_failures,
                    "Failed CBF walks in a row before stopping (0 = 10 n + 100)")
        ->capture_default_str();
  };
  add_strategy_options(immunize);
  immunize->add_option("--output", output, "CSV output ('-' for stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run an SIR ensemble");
  SirParams sir;
  std::string plan_path, trajectory_path;
  std::size_t trials = 20;
  simulate->add_option("--graph", graph_path, "Edge list")->required();
  simulate->add_option("--plan", plan_path, "Removal plan CSV applied before t = 0");
  add_sir_options(simulate, sir);
  simulate->add_option("--seed", seed, "Seed of trial 0; trial t uses seed + t")
      ->capture_default_str();
  simulate->add_option("--trials", trials, "Trials")->capture_default_str();
  simulate->add_option("--workers", workers, "Worker threads")->capture_default_str();
  simulate->add_option("--trajectory", trajectory_path, "Mean t,S,I,R trajectory CSV");
  simulate->add_option("--output", output, "Summary CSV output ('-' for stdout)");

  // sweeps
  ExperimentConfig experiment;
  std::vector<std::string> strategies;
  std::string svg_path, output_dir;
  auto add_sweep = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    add_lfr_options(cmd, experiment.lfr);
    cmd->add_option("--graph", graph_path, "Edge list instead of generated networks");
    cmd->add_option("--partition", partition_path, "Community file for --graph");
    cmd->add_flag("--detect", experiment.detect_partition,
                  "Detect communities when --graph has no --partition");
    cmd->add_option("--strategies", strategies, "Comma-separated strategy list")
        ->delimiter(',');
    cmd->add_option("--g-min", experiment.g_min, "First g")->capture_default_str();
    cmd->add_option("--g-max", experiment.g_max, "Last g")->capture_default_str();
    cmd->add_option("--g-step", experiment.g_step, "g step")->capture_default_str();
    add_sir_options(cmd, experiment.sir);
    add_strategy_options(cmd);
    cmd->add_option("--networks", experiment.networks, "Generated networks")
        ->capture_default_str();
    cmd->add_option("--trials", experiment.trials, "Trials per network")->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads")->capture_default_str();
    cmd->add_option("--output", output, "CSV output ('-' for stdout)");
    cmd->add_option("--svg", svg_path, "SVG chart output");
    cmd->add_option("--output-dir", output_dir, "Directory for CSV and SVG files");
    return cmd;
  };
  auto* sweep_inf = add_sweep("sweep-infection", "Total infected against removed fraction g");
  auto* sweep_l = add_sweep("sweep-lcc", "Largest component against removed fraction g");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // --config may appear anywhere, so it is consumed here rather than by CLI11.
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[i + 1];
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                   args.begin() + static_cast<std::ptrdiff_t>(i + 2));
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
    if (!config_path.empty()) {
      // One file may serve several subcommands: keys that only another
      // subcommand understands are skipped, unknown keys still fail to parse.
      const CLI::App* chosen = nullptr;
      for (const auto& a : args) {
        if (a.rfind("-", 0) == 0) continue;
        for (const auto* sub : app.get_subcommands({})) {
          if (sub->get_name() == a) chosen = sub;
        }
        if (chosen) break;
      }
      auto understood = [](const CLI::App* sub, const std::string& arg) {
        return sub->get_option_no_throw(arg.substr(0, arg.find('='))) != nullptr;
      };
      for (const auto& extra : config_arguments(config_path, args)) {
        bool elsewhere = false;
        for (const auto* sub : app.get_subcommands({})) elsewhere = elsewhere || understood(sub, extra);
        if (chosen != nullptr && !understood(chosen, extra) && elsewhere) continue;
        args.push_back(extra);
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*generate) {
      lfr.seed = seed;
      const auto net = generate_lfr(lfr);
      const auto labeled = with_index_labels(net.graph);
      Sink sink(output);
      write_edge_list(sink.get(), labeled,
                      {"lfr " + lfr.describe(),
                       "realized_mixing " + format_number(net.realized_mixing)});
      if (!communities_path.empty()) {
        auto out = open_output(communities_path);
        write_partition(out, labeled, net.partition);
      }
    } else if (*detect) {
      const auto labeled = load_edge_list(graph_path);
      const auto partition = detect_communities_label_propagation(labeled.graph, {seed, max_sweeps});
      Sink sink(output);
      write_partition(sink.get(), labeled, partition);
    } else if (*stats) {
      const auto in = load(graph_path, partition_path);
      const auto& graph = in.graph.graph;
      const auto& p = *in.partition;
      Sink sink(output);
      sink.get() << "community,size,mu\n";
      for (CommunityId c = 0; c < p.community_count(); ++c) {
        sink.get() << c << ',' << p.members(c).size() << ','
                   << format_number(community_mu(graph, p, c)) << '\n';
      }
    } else if (*centrality) {
      const auto in = load(graph_path, partition_path);
      const auto& graph = in.graph.graph;
      if ((measure == "mod" || measure == "commn") && !in.partition) {
        throw std::invalid_argument("measure '" + measure + "' needs --partition");
      }
      CentralityScores scores;
      if (measure == "degree") scores = degree_centrality(graph);
      if (measure == "betweenness") scores = betweenness_centrality(graph, workers);
      if (measure == "mod") scores = mod_centrality(graph, *in.partition);
      if (measure == "commn") scores = commn_centrality(graph, *in.partition, {scale});
      const auto order = rank(scores);
      std::vector<std::size_t> position(graph.node_count(), 0);
      for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i + 1;
      Sink sink(output);
      sink.get() << "node,score,rank\n";
      for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (!scores.has(v)) continue;
        sink.get() << in.graph.label(v) << ',' << format_number(scores.value[v]) << ','
                   << position[v] << '\n';
      }
    } else if (*immunize) {
      const auto in = load(graph_path, partition_path);
      const auto& graph = in.graph.graph;
      if (!g && !count) throw std::invalid_argument("immunize needs --g or --count");
      const double fraction = g ? *g : g_for_count(graph, *count);
      options.workers = workers;
      const auto plan = build_plan(parse_strategy(strategy), graph,
                                   in.partition ? &*in.partition : nullptr, fraction, seed,
                                   options);
      if (plan.truncated) {
        std::cerr << "warning: " << plan.strategy << " stopped after "
                  << plan.removal_order.size() << " nodes\n";
      }
      Sink sink(output);
      sink.get() << "order,node\n";
      for (std::size_t i = 0; i < plan.removal_order.size(); ++i) {
        sink.get() << i << ',' << in.graph.label(plan.removal_order[i]) << '\n';
      }
    } else if (*simulate) {
      const auto labeled = load_edge_list(graph_path);
      Graph graph = labeled.graph;
      if (!plan_path.empty()) graph = graph.remove_nodes(load_plan(plan_path, labeled));
      sir.seed = seed;
      const auto ensemble = run_sir_ensemble(graph, sir, trials, workers);
      if (!trajectory_path.empty()) {
        Sink traj(trajectory_path);
        traj.get() << "t,S,I,R\n";
        for (std::size_t t = 0; t < ensemble.mean_infected.size(); ++t) {
          traj.get() << t << ',' << format_number(ensemble.mean_susceptible[t]) << ','
                     << format_number(ensemble.mean_infected[t]) << ','
                     << format_number(ensemble.mean_removed[t]) << '\n';
        }
      }
      Sink sink(output);
      sink.get() << "trials,mean_TI,std_TI,mean_Rinf,std_Rinf,mean_steady_time\n"
                 << ensemble.trials << ',' << format_number(ensemble.total_infected.mean) << ','
                 << format_number(ensemble.total_infected.std) << ','
                 << format_number(ensemble.r_infinity.mean) << ','
                 << format_number(ensemble.r_infinity.std) << ','
                 << format_number(ensemble.steady_state_time.mean) << '\n';
    } else if (*sweep_inf || *sweep_l) {
      const bool infection = sweep_inf->parsed();
      experiment.edge_list = graph_path;
      experiment.partition = partition_path;
      experiment.seed = seed;
      experiment.workers = workers;
      experiment.strategy_options = options;
      if (!strategies.empty()) {
        experiment.strategies.clear();
        for (const auto& s : strategies) experiment.strategies.push_back(parse_strategy(s));
      }
      const auto rows = infection ? sweep_infection(experiment) : sweep_lcc(experiment);
      if (!output_dir.empty()) {
        fs::create_directories(output_dir);
        const fs::path dir(output_dir);
        if (infection) {
          emit_csv(rows, dir / "infection.csv");
          emit_svg_curves(rows, dir / "infection_fraction.svg", "infected_fraction");
          emit_svg_curves(rows, dir / "infection_count.svg", "total_infected");
        } else {
          emit_csv(rows, dir / "lcc.csv");
          emit_svg_curves(rows, dir / "lcc.svg", "lcc_size");
        }
      }
      if (output_dir.empty() || output != "-") {
        Sink sink(output);
        emit_csv(rows, sink.get());
      }
      if (!svg_path.empty()) {
        emit_svg_curves(rows, fs::path(svg_path), infection ? "infected_fraction" : "lcc_size");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
