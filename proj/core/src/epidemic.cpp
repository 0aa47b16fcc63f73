#include "netimmune/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "netimmune/parallel.hpp"
#include "netimmune/random.hpp"

namespace netimmune {

void SirParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw std::invalid_argument("sigma must lie in [0, 1]");
  if (initial_infected == 0 && !(initial_fraction > 0.0 && initial_fraction <= 1.0)) {
    throw std::invalid_argument("initial infected fraction must lie in (0, 1]");
  }
}

std::size_t SirParams::initial_count(std::size_t active_nodes) const {
  if (initial_infected > 0) return initial_infected;
  const auto k = static_cast<std::size_t>(
      std::llround(initial_fraction * static_cast<double>(active_nodes)));
  return std::max<std::size_t>(k, 1);
}

SirTrajectory run_sir(const Graph& graph, const SirParams& params) {
  params.validate();
  const std::size_t active = graph.active_count();
  const std::size_t seeds = params.initial_count(active);
  if (seeds > active) {
    throw std::invalid_argument("cannot infect " + std::to_string(seeds) + " of " +
                                std::to_string(active) + " active nodes");
  }

  enum : std::uint8_t { kS = 0, kI = 1, kR = 2 };
  std::vector<std::uint8_t> state(graph.node_count(), kS);
  auto rng = make_rng(params.seed);

  auto nodes = graph.active_nodes();
  for (std::size_t i = 0; i < seeds; ++i) {
    std::swap(nodes[i], nodes[i + uniform_index(rng, nodes.size() - i)]);
  }
  std::vector<NodeId> infected(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(seeds));
  for (NodeId v : infected) state[v] = kI;

  SirTrajectory out;
  out.initial_infected = seeds;
  out.total_infected = seeds;
  SirCounts counts{active - seeds, seeds, 0};
  out.steps.push_back(counts);

  std::vector<NodeId> fresh;
  std::vector<NodeId> still;
  std::size_t t = 0;
  while (!infected.empty()) {
    if (t >= params.max_steps) break;
    ++t;
    fresh.clear();
    for (NodeId u : infected) {
      graph.for_each_active_neighbor(u, [&](NodeId v) {
        if (state[v] == kS && bernoulli(rng, params.lambda)) {
          state[v] = kI;
          fresh.push_back(v);
        }
      });
    }
    still.clear();
    for (NodeId u : infected) {
      if (bernoulli(rng, params.sigma)) {
        state[u] = kR;
        ++counts.removed;
      } else {
        still.push_back(u);
      }
    }
    counts.susceptible -= fresh.size();
    out.total_infected += fresh.size();
    still.insert(still.end(), fresh.begin(), fresh.end());
    infected.swap(still);
    counts.infected = infected.size();
    out.steps.push_back(counts);
  }
  out.halted = infected.empty();
  out.steady_state_time = t;
  return out;
}

std::size_t r_infinity(const SirTrajectory& trajectory) {
  if (!trajectory.halted || trajectory.steps.empty()) {
    throw std::logic_error("R_infinity is undefined for a trajectory that did not halt");
  }
  return trajectory.steps.back().removed;
}

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  const auto n = static_cast<double>(xs.size());
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / n);
  return out;
}

SirEnsemble run_sir_ensemble(const Graph& graph, const SirParams& params, std::size_t trials,
                             unsigned workers) {
  if (trials == 0) throw std::invalid_argument("an ensemble needs at least one trial");
  params.validate();
  std::vector<SirTrajectory> runs(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    SirParams p = params;
    p.seed = params.seed + t;
    runs[t] = run_sir(graph, p);
  });

  SirEnsemble out;
  out.trials = trials;
  std::vector<double> ti, rinf, steady;
  std::size_t horizon = 0;
  for (const auto& run : runs) {
    ti.push_back(static_cast<double>(run.total_infected));
    rinf.push_back(static_cast<double>(run.steps.back().removed));
    steady.push_back(static_cast<double>(run.steady_state_time));
    out.per_trial_total_infected.push_back(run.total_infected);
    horizon = std::max(horizon, run.steps.size());
  }
  out.total_infected = mean_std(ti);
  out.r_infinity = mean_std(rinf);
  out.steady_state_time = mean_std(steady);

  out.mean_susceptible.assign(horizon, 0.0);
  out.mean_infected.assign(horizon, 0.0);
  out.mean_removed.assign(horizon, 0.0);
  for (const auto& run : runs) {
    for (std::size_t t = 0; t < horizon; ++t) {
      const auto& c = run.steps[std::min(t, run.steps.size() - 1)];
      out.mean_susceptible[t] += static_cast<double>(c.susceptible);
      out.mean_infected[t] += static_cast<double>(c.infected);
      out.mean_removed[t] += static_cast<double>(c.removed);
    }
  }
  const auto n = static_cast<double>(trials);
  for (std::size_t t = 0; t < horizon; ++t) {
    out.mean_susceptible[t] /= n;
    out.mean_infected[t] /= n;
    out.mean_removed[t] /= n;
  }
  return out;
}

DegreeDistribution DegreeDistribution::from_graph(const Graph& graph) {
  std::map<std::size_t, std::size_t> histogram;
  for (NodeId v : graph.active_nodes()) ++histogram[graph.degree_unchecked(v)];
  std::vector<std::size_t> degree;
  std::vector<double> probability;
  const auto n = static_cast<double>(graph.active_count());
  for (const auto& [k, count] : histogram) {
    degree.push_back(k);
    probability.push_back(static_cast<double>(count) / n);
  }
  return from_pairs(std::move(degree), std::move(probability));
}

DegreeDistribution DegreeDistribution::from_pairs(std::vector<std::size_t> degree,
                                                  std::vector<double> probability) {
  if (degree.size() != probability.size() || degree.empty()) {
    throw std::invalid_argument("degree distribution needs matching, non-empty columns");
  }
  if (!std::is_sorted(degree.begin(), degree.end()) ||
      std::adjacent_find(degree.begin(), degree.end()) != degree.end()) {
    throw std::invalid_argument("degree classes must be distinct and ascending");
  }
  const double total = std::accumulate(probability.begin(), probability.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("degree probabilities must sum to 1");
  }
  DegreeDistribution d;
  d.degree = std::move(degree);
  d.probability = std::move(probability);
  for (std::size_t i = 0; i < d.degree.size(); ++i) {
    const auto k = static_cast<double>(d.degree[i]);
    d.mean += k * d.probability[i];
    d.second_moment += k * k * d.probability[i];
  }
  return d;
}

double epidemic_threshold(const DegreeDistribution& distribution) {
  if (!(distribution.second_moment > 0.0)) {
    throw std::domain_error("epidemic threshold is undefined for an edgeless network");
  }
  return distribution.mean / distribution.second_moment;
}

double MeanFieldTrajectory::total_removed(const DegreeDistribution& d, std::size_t r) const {
  double acc = 0.0;
  for (std::size_t c = 0; c < d.probability.size(); ++c) acc += d.probability[c] * removed[r][c];
  return acc;
}

double MeanFieldTrajectory::total_infected(const DegreeDistribution& d, std::size_t r) const {
  double acc = 0.0;
  for (std::size_t c = 0; c < d.probability.size(); ++c) acc += d.probability[c] * infected[r][c];
  return acc;
}

MeanFieldTrajectory integrate_mean_field(const DegreeDistribution& distribution,
                                         const MeanFieldOptions& options) {
  if (!(options.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(options.horizon >= 0.0)) throw std::invalid_argument("horizon must be non-negative");
  if (!(options.initial_infected_fraction >= 0.0 && options.initial_infected_fraction <= 1.0)) {
    throw std::invalid_argument("initial infected fraction must lie in [0, 1]");
  }
  if (!(distribution.mean > 0.0)) {
    throw std::domain_error("mean-field dynamics need a positive mean degree");
  }
  const std::size_t classes = distribution.degree.size();
  const auto steps = static_cast<std::size_t>(std::llround(options.horizon / options.dt));
  const std::size_t stride = std::max<std::size_t>(options.record_stride, 1);

  std::vector<double> s(classes, 1.0 - options.initial_infected_fraction);
  std::vector<double> i(classes, options.initial_infected_fraction);
  std::vector<double> r(classes, 0.0);

  MeanFieldTrajectory out;
  out.degree = distribution.degree;
  auto record = [&](double t) {
    out.time.push_back(t);
    out.susceptible.push_back(s);
    out.infected.push_back(i);
    out.removed.push_back(r);
  };
  record(0.0);

  std::vector<double> ds(classes), di(classes);
  for (std::size_t step = 1; step <= steps; ++step) {
    double theta = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
      theta += static_cast<double>(distribution.degree[c]) * distribution.probability[c] * i[c];
    }
    theta /= distribution.mean;

    for (std::size_t c = 0; c < classes; ++c) {
      const double infection = static_cast<double>(distribution.degree[c]) * options.lambda * s[c] * theta;
      const double recovery = options.sigma * i[c];
      s[c] -= options.dt * infection;
      i[c] += options.dt * (infection - recovery);
      r[c] += options.dt * recovery;
    }

    const double t = static_cast<double>(step) * options.dt;
    const double drift_budget = 1e-6 * std::max(1.0, t);
    for (std::size_t c = 0; c < classes; ++c) {
      constexpr double slack = 1e-9;
      const bool out_of_range = s[c] < -slack || i[c] < -slack || r[c] < -slack ||
                                s[c] > 1.0 + slack || i[c] > 1.0 + slack || r[c] > 1.0 + slack;
      if (out_of_range || std::abs(s[c] + i[c] + r[c] - 1.0) > drift_budget) {
        throw std::domain_error("mean-field integration became unstable at t=" +
                                std::to_string(t) + "; reduce dt");
      }
    }
    if (step % stride == 0 || step == steps) record(t);
  }
  return out;
}

}  // namespace netimmune
