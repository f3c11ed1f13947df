#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gmrfig/gmrf.hpp"
#include "gmrfig/infogeo.hpp"
#include "gmrfig/lattice.hpp"
#include "gmrfig/rng.hpp"

namespace gmrfig {

enum class ScheduleMode { up, down, up_then_down };
enum class SamplerKind { metropolis, gibbs };
/// Metropolis candidate generator: x + N(0, s^2), or a fresh draw from
/// N(mu0, sigma0^2) that ignores the current value.
enum class ProposalKind { random_walk, independent };

std::string_view to_string(ScheduleMode mode);
std::string_view to_string(SamplerKind kind);
std::string_view to_string(ProposalKind kind);
ScheduleMode parse_schedule_mode(std::string_view name);
SamplerKind parse_sampler_kind(std::string_view name);
ProposalKind parse_proposal_kind(std::string_view name);

/// Linear inverse-temperature schedule.
///
/// Each leg has round((beta_max - beta_min) / delta_beta) steps. The up leg
/// visits beta_min + k delta_beta for k = 1..N, the down leg beta_max - k delta_beta.
/// When beta_min == beta_max the legs hold beta constant for `hold_steps` steps.
struct Schedule {
  double beta_min = 0.0;
  double beta_max = 0.5;
  double delta_beta = 0.005;
  ScheduleMode mode = ScheduleMode::up_then_down;
  int hold_steps = 100;

  void validate() const;
  int steps_per_leg() const;
  std::vector<double> betas() const;
};

/// Everything measured from one snapshot of the chain.
struct TrajectoryRecord {
  int iteration = 0;
  double beta_set = 0.0;
  double mu_hat = 0.0;
  double sigma2_hat = 0.0;
  double beta_mpl = 0.0;
  double entropy = 0.0;
  FisherTensor g1{0, 0, 0, 0, TensorKind::type1};
  FisherTensor g2{0, 0, 0, 0, TensorKind::type2};
  double upsilon_beta = 0.0;
  double acceptance_rate = 1.0;
  /// Set when sigma2_hat == 0 or the neighbour covariance vanishes; the
  /// estimate-dependent fields are then NaN.
  bool degenerate = false;
};

/// Metropolis ratio p(x_new | eta) / p(x_old | eta).
double acceptance_ratio(double x_old, double x_new, std::span<const double> neighbor_values,
                        const ModelParams& params);

/// Metropolis sweep over all sites in row-major order. `propose(x, rng)`
/// returns the candidate for current value x; acceptance is min{1, P}.
/// Returns the acceptance rate.
template <typename Propose>
double metropolis_sweep_with(Configuration& config, const ModelParams& params, Propose&& propose,
                             Rng& rng);

/// Random-walk Metropolis sweep with N(0, proposal_std^2) increments.
/// Updates `config` in place and returns the fraction of accepted moves.
double metropolis_sweep(Configuration& config, const ModelParams& params, double proposal_std,
                        Rng& rng);

/// Metropolis sweep whose candidates are drawn from N(candidate_mean,
/// candidate_variance), accepted with min{1, P}.
double independence_sweep(Configuration& config, const ModelParams& params,
                          double candidate_mean, double candidate_variance, Rng& rng);

/// Heat-bath sweep: every site redrawn, row-major, from its exact conditional
/// N(mu + beta sum_j (x_j - mu), sigma^2).
void gibbs_sweep(Configuration& config, const ModelParams& params, Rng& rng);

/// Estimates (mu, sigma^2, beta) from a snapshot and evaluates entropy, both
/// tensors and the asymptotic variance at the estimates.
TrajectoryRecord measure_snapshot(const Configuration& config, double beta_set);

struct RunOptions {
  SamplerKind sampler = SamplerKind::metropolis;
  ProposalKind proposal = ProposalKind::independent;
  int sweeps_per_step = 1;
  /// Random-walk step; when empty, sqrt of the sampler's sigma^2.
  std::optional<double> proposal_std;
  /// Feed each step's (mu_hat, sigma2_hat) back into the sampler. Off by
  /// default: under feedback the variance runs away (random walk) or
  /// collapses (independent candidates) within one sweep schedule.
  bool track_estimates = false;
  std::uint64_t seed = 0;
  /// Called after each step's sweeps with (iteration, beta_set, field).
  std::function<void(int, double, const Configuration&)> on_step;
};

/// Drives the field through the schedule: per step, set beta, sweep, then
/// re-estimate everything from the new snapshot. Independent candidates are
/// drawn from N(mu, sigma^2) of the sampler. Returns one record per step.
std::vector<TrajectoryRecord> run_schedule(const Schedule& schedule, Configuration config,
                                           const ModelParams& initial_params,
                                           const RunOptions& options);

// ---------------------------------------------------------------------------

template <typename Propose>
double metropolis_sweep_with(Configuration& config, const ModelParams& params, Propose&& propose,
                             Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::size_t accepted = 0;
  const double inv2s2 = 1.0 / (2.0 * params.sigma2);
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      const double x = config(r, c);
      const double x_new = propose(x, rng);
      // log p(x_new|eta) - log p(x|eta) with the conditional mean
      // m = mu + beta sum_j (x_j - mu)
      const double m =
          params.mu + params.beta * (neighbor_sum(config, r, c) - params.delta * params.mu);
      const double log_ratio = ((x - m) * (x - m) - (x_new - m) * (x_new - m)) * inv2s2;
      if (log_ratio >= 0.0 || unif(rng) < std::exp(log_ratio)) {
        config(r, c) = x_new;
        ++accepted;
      }
    }
  }
  return static_cast<double>(accepted) / static_cast<double>(config.size());
}

}  // namespace gmrfig
