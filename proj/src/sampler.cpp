#include "gmrfig/sampler.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gmrfig/errors.hpp"

namespace gmrfig {

std::string_view to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::up: return "up";
    case ScheduleMode::down: return "down";
    case ScheduleMode::up_then_down: return "up-then-down";
  }
  return "?";
}

std::string_view to_string(SamplerKind kind) {
  return kind == SamplerKind::metropolis ? "metropolis" : "gibbs";
}

std::string_view to_string(ProposalKind kind) {
  return kind == ProposalKind::random_walk ? "random-walk" : "independent";
}

ProposalKind parse_proposal_kind(std::string_view name) {
  if (name == "random-walk") return ProposalKind::random_walk;
  if (name == "independent") return ProposalKind::independent;
  throw InvalidParameter("unknown proposal '" + std::string(name) + "'");
}

ScheduleMode parse_schedule_mode(std::string_view name) {
  if (name == "up") return ScheduleMode::up;
  if (name == "down") return ScheduleMode::down;
  if (name == "up-then-down") return ScheduleMode::up_then_down;
  throw InvalidParameter("unknown schedule mode '" + std::string(name) + "'");
}

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "metropolis") return SamplerKind::metropolis;
  if (name == "gibbs") return SamplerKind::gibbs;
  throw InvalidParameter("unknown sampler '" + std::string(name) + "'");
}

void Schedule::validate() const {
  if (!std::isfinite(beta_min) || !std::isfinite(beta_max)) {
    throw InvalidParameter("schedule bounds must be finite");
  }
  if (beta_min > beta_max) throw InvalidParameter("beta_min must not exceed beta_max");
  if (!(delta_beta > 0.0)) throw InvalidParameter("delta_beta must be positive");
  if (beta_min == beta_max && hold_steps < 1) {
    throw InvalidParameter("a constant schedule needs hold_steps >= 1");
  }
  if (beta_min != beta_max && steps_per_leg() < 1) {
    throw InvalidParameter("delta_beta is larger than the beta range");
  }
}

int Schedule::steps_per_leg() const {
  if (beta_min == beta_max) return hold_steps;
  return static_cast<int>(std::lround((beta_max - beta_min) / delta_beta));
}

std::vector<double> Schedule::betas() const {
  validate();
  const int n = steps_per_leg();
  const bool hold = beta_min == beta_max;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(mode == ScheduleMode::up_then_down ? 2 * n : n));
  if (mode != ScheduleMode::down) {
    for (int k = 1; k <= n; ++k) out.push_back(hold ? beta_min : beta_min + k * delta_beta);
  }
  if (mode != ScheduleMode::up) {
    const double top = mode == ScheduleMode::down ? beta_max : (hold ? beta_max : out.back());
    for (int k = 1; k <= n; ++k) out.push_back(hold ? beta_max : top - k * delta_beta);
  }
  return out;
}

double acceptance_ratio(double x_old, double x_new, std::span<const double> neighbor_values,
                        const ModelParams& params) {
  return std::exp(lcdf_log_density(x_new, neighbor_values, params) -
                  lcdf_log_density(x_old, neighbor_values, params));
}

double metropolis_sweep(Configuration& config, const ModelParams& params, double proposal_std,
                        Rng& rng) {
  if (!(proposal_std > 0.0)) throw InvalidParameter("proposal_std must be positive");
  params.validate();
  std::normal_distribution<double> step(0.0, proposal_std);
  return metropolis_sweep_with(
      config, params, [&step](double x, Rng& g) { return x + step(g); }, rng);
}

double independence_sweep(Configuration& config, const ModelParams& params,
                          double candidate_mean, double candidate_variance, Rng& rng) {
  if (!std::isfinite(candidate_mean) || !(candidate_variance > 0.0) ||
      !std::isfinite(candidate_variance)) {
    throw InvalidParameter("candidate distribution must have finite mean and positive variance");
  }
  params.validate();
  std::normal_distribution<double> draw(candidate_mean, std::sqrt(candidate_variance));
  return metropolis_sweep_with(
      config, params, [&draw](double, Rng& g) { return draw(g); }, rng);
}

void gibbs_sweep(Configuration& config, const ModelParams& params, Rng& rng) {
  params.validate();
  std::normal_distribution<double> noise(0.0, std::sqrt(params.sigma2));
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      const double m =
          params.mu + params.beta * (neighbor_sum(config, r, c) - params.delta * params.mu);
      config(r, c) = m + noise(rng);
    }
  }
}

TrajectoryRecord measure_snapshot(const Configuration& config, double beta_set) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  TrajectoryRecord rec;
  rec.beta_set = beta_set;
  const SampleMoments m = sample_mean_var(config);
  rec.mu_hat = m.mean;
  rec.sigma2_hat = m.variance;
  const bool finite = std::isfinite(m.mean) && std::isfinite(m.variance);
  const PatchStats stats = finite ? patch_covariance(config) : PatchStats{};
  if (!finite || m.degenerate || stats.degenerate) {
    rec.degenerate = true;
    rec.beta_mpl = rec.entropy = rec.upsilon_beta = nan;
    rec.g1 = {nan, nan, nan, nan, TensorKind::type1};
    rec.g2 = {nan, nan, nan, nan, TensorKind::type2};
    return rec;
  }
  rec.beta_mpl = mpl_beta(stats);
  const ModelParams estimated{rec.mu_hat, rec.sigma2_hat, rec.beta_mpl, kMooreSupport};
  rec.entropy = entropy(estimated, stats);
  rec.g1 = tensor_g1(estimated, stats);
  rec.g2 = tensor_g2(estimated, stats);
  rec.upsilon_beta = rec.g2.z != 0.0 ? asymptotic_variance(rec.g1, rec.g2) : nan;
  return rec;
}

std::vector<TrajectoryRecord> run_schedule(const Schedule& schedule, Configuration config,
                                           const ModelParams& initial_params,
                                           const RunOptions& options) {
  initial_params.validate();
  if (options.sweeps_per_step < 1) throw InvalidParameter("sweeps_per_step must be >= 1");
  if (options.proposal_std && !(*options.proposal_std > 0.0)) {
    throw InvalidParameter("proposal_std must be positive");
  }
  const std::vector<double> betas = schedule.betas();

  ModelParams current = initial_params;
  std::vector<TrajectoryRecord> records;
  records.reserve(betas.size());
  for (std::size_t k = 0; k < betas.size(); ++k) {
    const int iteration = static_cast<int>(k) + 1;
    current.beta = betas[k];
    Rng rng = make_rng(options.seed, Stream::sweep, static_cast<std::uint64_t>(iteration));
    double accepted = 0.0;
    for (int s = 0; s < options.sweeps_per_step; ++s) {
      if (options.sampler == SamplerKind::gibbs) {
        gibbs_sweep(config, current, rng);
        accepted += 1.0;
      } else if (options.proposal == ProposalKind::independent) {
        accepted += independence_sweep(config, current, current.mu, current.sigma2, rng);
      } else {
        const double step = options.proposal_std.value_or(std::sqrt(current.sigma2));
        accepted += metropolis_sweep(config, current, step, rng);
      }
    }
    if (options.on_step) options.on_step(iteration, betas[k], config);

    TrajectoryRecord rec = measure_snapshot(config, betas[k]);
    rec.iteration = iteration;
    rec.acceptance_rate = accepted / options.sweeps_per_step;
    if (options.track_estimates && !rec.degenerate) {
      current.mu = rec.mu_hat;
      current.sigma2 = rec.sigma2_hat;
    }
    records.push_back(rec);
  }
  return records;
}

}  // namespace gmrfig
