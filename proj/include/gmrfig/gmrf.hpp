#pragma once

#include <array>
#include <span>

#include "gmrfig/lattice.hpp"

namespace gmrfig {

/// theta = (mu, sigma^2, beta) plus the neighbourhood support.
struct ModelParams {
  double mu = 0.0;
  double sigma2 = 1.0;
  double beta = 0.0;
  int delta = kMooreSupport;

  /// Throws InvalidParameter if sigma2 <= 0 or delta is not a supported support.
  void validate() const;
};

/// The five natural sufficient statistics of the pseudo-likelihood:
/// t1 = sum x_i, t2 = sum x_i^2, t3 = sum x_i S_i, t4 = sum S_i, t5 = sum S_i^2,
/// with S_i the sum over the neighbourhood of site i.
struct NaturalStatistics {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double t4 = 0.0;
  double t5 = 0.0;

  std::array<double, 5> as_array() const { return {t1, t2, t3, t4, t5}; }
};

/// Log of the local conditional density p(x | neighbours, theta).
double lcdf_log_density(double x, std::span<const double> neighbor_values,
                        const ModelParams& params);

/// Same density, taking the neighbour sum directly (hot path for the samplers).
double lcdf_log_density_from_sum(double x, double neighbor_sum, const ModelParams& params);

NaturalStatistics natural_statistics(const Configuration& config);

/// Sum over all sites of lcdf_log_density.
double log_pseudo_likelihood(const Configuration& config, const ModelParams& params);

/// Natural parameter vector c(theta) of the curved exponential family.
std::array<double, 5> natural_parameters(const ModelParams& params);

/// d(theta) for a lattice of n sites.
double log_normalizer_term(const ModelParams& params, std::size_t n);

/// <c(theta), T(X)> + d(theta); algebraically identical to log_pseudo_likelihood.
double log_pseudo_likelihood_exponential_form(const NaturalStatistics& stats,
                                              const ModelParams& params, std::size_t n);

}  // namespace gmrfig
