#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netimmune/graph.hpp"

namespace netimmune {

struct SirParams {
  /// Per-contact, per-step transmission probability.
  double lambda = 0.1;
  /// Per-step recovery probability of an infected node.
  double sigma = 0.1;
  /// Initial infected count; 0 means use initial_fraction.
  std::size_t initial_infected = 0;
  /// Fraction of active nodes infected at t = 0 (at least one node).
  double initial_fraction = 0.01;
  std::uint64_t seed = 0;
  std::size_t max_steps = 1'000'000;

  void validate() const;
  std::size_t initial_count(std::size_t active_nodes) const;
};

struct SirCounts {
  std::size_t susceptible = 0;
  std::size_t infected = 0;
  std::size_t removed = 0;
};

struct SirTrajectory {
  /// Counts at t = 0, 1, ..., steady_state_time.
  std::vector<SirCounts> steps;
  std::size_t initial_infected = 0;
  /// Initial plus every new infection.
  std::size_t total_infected = 0;
  std::size_t steady_state_time = 0;
  /// False when max_steps was reached with infected nodes left.
  bool halted = false;
};

/// Synchronous discrete-time SIR on the active nodes. Each step every infected
/// node infects each susceptible neighbor with probability lambda, then every
/// node that was infected before the step recovers with probability sigma.
/// Runs until no infected node is left or max_steps is reached.
SirTrajectory run_sir(const Graph& graph, const SirParams& params);

/// Final removed count. Throws std::logic_error for a trajectory that did not halt.
std::size_t r_infinity(const SirTrajectory& trajectory);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

MeanStd mean_std(const std::vector<double>& xs);

struct SirEnsemble {
  std::size_t trials = 0;
  MeanStd total_infected;
  MeanStd r_infinity;
  MeanStd steady_state_time;
  /// Per-step means over trials; finished trials hold their final state.
  std::vector<double> mean_susceptible;
  std::vector<double> mean_infected;
  std::vector<double> mean_removed;
  std::vector<std::size_t> per_trial_total_infected;
};

/// Trial t uses seed params.seed + t. Aggregation runs in trial order, so the
/// result is independent of `workers`.
SirEnsemble run_sir_ensemble(const Graph& graph, const SirParams& params, std::size_t trials,
                             unsigned workers = 1);

struct DegreeDistribution {
  /// Distinct degrees in ascending order with their probabilities.
  std::vector<std::size_t> degree;
  std::vector<double> probability;
  double mean = 0.0;
  double second_moment = 0.0;

  static DegreeDistribution from_graph(const Graph& graph);
  static DegreeDistribution from_pairs(std::vector<std::size_t> degree,
                                       std::vector<double> probability);
};

/// lambda_c = <k> / <k^2> for uncorrelated networks. Throws for edgeless input.
double epidemic_threshold(const DegreeDistribution& distribution);

struct MeanFieldOptions {
  double lambda = 0.1;
  double sigma = 0.1;
  double dt = 0.01;
  double horizon = 100.0;
  double initial_infected_fraction = 0.01;
  /// Record every n-th Euler step (the final step is always recorded).
  std::size_t record_stride = 1;
};

struct MeanFieldTrajectory {
  std::vector<std::size_t> degree;
  std::vector<double> time;
  /// [record][degree class]
  std::vector<std::vector<double>> susceptible;
  std::vector<std::vector<double>> infected;
  std::vector<std::vector<double>> removed;

  /// sum_k P(k) X(k, t) at record index r.
  double total_removed(const DegreeDistribution& d, std::size_t r) const;
  double total_infected(const DegreeDistribution& d, std::size_t r) const;
};

/// Forward Euler for the uncorrelated degree-class equations
///   dS_k/dt = -k lambda S_k Theta,  dI_k/dt = -sigma I_k + k lambda S_k Theta,
///   dR_k/dt = sigma I_k,  Theta = sum_l l P(l) I_l / <k>.
/// Throws std::domain_error when a compartment leaves [0, 1] or the per-class
/// normalization drifts by more than 1e-6 per unit time.
MeanFieldTrajectory integrate_mean_field(const DegreeDistribution& distribution,
                                         const MeanFieldOptions& options);

}  // namespace netimmune
