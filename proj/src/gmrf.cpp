#include "gmrfig/gmrf.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "gmrfig/errors.hpp"

namespace gmrfig {

void ModelParams::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw InvalidParameter("sigma2 must be positive and finite");
  }
  if (!std::isfinite(mu) || !std::isfinite(beta)) {
    throw InvalidParameter("mu and beta must be finite");
  }
  switch (delta) {
    case 4: case 8: case 12: case 20: case 24: break;
    default: throw InvalidParameter("unsupported neighbourhood support " + std::to_string(delta));
  }
}

double lcdf_log_density_from_sum(double x, double neighbor_sum, const ModelParams& p) {
  const double resid = (x - p.mu) - p.beta * (neighbor_sum - p.delta * p.mu);
  return -0.5 * std::log(2.0 * std::numbers::pi * p.sigma2) - resid * resid / (2.0 * p.sigma2);
}

double lcdf_log_density(double x, std::span<const double> neighbor_values,
                        const ModelParams& params) {
  if (static_cast<int>(neighbor_values.size()) != params.delta) {
    throw InvalidParameter("neighbour count does not match the support delta");
  }
  const double s = std::accumulate(neighbor_values.begin(), neighbor_values.end(), 0.0);
  return lcdf_log_density_from_sum(x, s, params);
}

NaturalStatistics natural_statistics(const Configuration& config) {
  NaturalStatistics t;
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      const double x = config(r, c);
      const double s = neighbor_sum(config, r, c);
      t.t1 += x;
      t.t2 += x * x;
      t.t3 += x * s;
      t.t4 += s;
      t.t5 += s * s;
    }
  }
  return t;
}

double log_pseudo_likelihood(const Configuration& config, const ModelParams& params) {
  params.validate();
  if (params.delta != kMooreSupport) {
    throw InvalidParameter("lattice neighbourhoods are Moore (delta = 8)");
  }
  double total = 0.0;
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      total += lcdf_log_density_from_sum(config(r, c), neighbor_sum(config, r, c), params);
    }
  }
  return total;
}

std::array<double, 5> natural_parameters(const ModelParams& p) {
  const double s2 = p.sigma2;
  const double damp = 1.0 - p.beta * p.delta;
  // The t5 coefficient carries beta^2: it comes from the beta^2 (S_i - delta mu)^2 term.
  return {p.mu / s2 * damp, -1.0 / (2.0 * s2), p.beta / s2, -p.beta * p.mu / s2 * damp,
          -p.beta * p.beta / (2.0 * s2)};
}

double log_normalizer_term(const ModelParams& p, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double s2 = p.sigma2;
  const double bd = p.beta * p.delta;
  return -0.5 * nn * (std::log(2.0 * std::numbers::pi * s2) + p.mu * p.mu / s2) +
         bd * p.mu * p.mu * nn / s2 * (1.0 - bd / 2.0);
}

double log_pseudo_likelihood_exponential_form(const NaturalStatistics& stats,
                                              const ModelParams& params, std::size_t n) {
  params.validate();
  const auto c = natural_parameters(params);
  const auto t = stats.as_array();
  double dot = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) dot += c[k] * t[k];
  return dot + log_normalizer_term(params, n);
}

}  // namespace gmrfig
