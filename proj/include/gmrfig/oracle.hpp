#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gmrfig/gmrf.hpp"
#include "gmrfig/infogeo.hpp"
#include "gmrfig/lattice.hpp"
#include "gmrfig/rng.hpp"

namespace gmrfig {

/// Joint Gaussian law of one 3x3 patch (x_i at index 4, its neighbours in
/// NW..SE order elsewhere). All nine coordinates share the same mean.
class NeighborhoodModel {
 public:
  /// Throws InvalidParameter unless cov9 is symmetric with eigenvalues >= -1e-10.
  NeighborhoodModel(double mean, const Matrix9d& cov9);

  /// cov9 = sigma2 * I.
  static NeighborhoodModel iid(double mean, double sigma2);

  double mean() const { return mean_; }
  const Matrix9d& cov9() const { return cov9_; }

  /// Exact patch statistics for this law, as the closed forms expect them.
  PatchStats stats() const { return decompose_patch_covariance(cov9_); }

  Patch sample(Rng& rng) const;

 private:
  double mean_;
  Matrix9d cov9_;
  Matrix9d root_;  ///< root_ * root_^T == cov9
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

inline constexpr int kMinOracleSamples = 10'000;

/// Monte-Carlo value of one Fisher information entry of the local conditional
/// density under `model`: E[s_i s_j] for type1, -E[d2 log p] for type2.
/// Needs n_samples >= kMinOracleSamples.
McEstimate mc_fisher_component(const NeighborhoodModel& model, const ModelParams& params,
                               FisherComponent which, TensorKind kind, int n_samples,
                               std::uint64_t seed);

struct IsserlisCheck {
  double mc = 0.0;
  double std_error = 0.0;
  double closed = 0.0;
};

/// E[v_a v_b v_c v_d] for zero-mean Gaussian v with covariance `cov` (2..4
/// variables), by sampling and by the pairing sum.
IsserlisCheck isserlis_fourth_moment(const Eigen::MatrixXd& cov, std::array<int, 4> idx,
                                     int n_samples, std::uint64_t seed);

/// Monte-Carlo E[prod_k (v_{idx_k} - mean)] over patches drawn from `model`.
McEstimate mc_central_moment(const NeighborhoodModel& model, const std::vector<int>& idx,
                             int n_samples, std::uint64_t seed);

/// sum_i (x_i - mu) S_i / sum_i S_i^2 with S_i = sum_j (x_j - mu), by direct
/// site loops. Throws DegenerateField when the denominator vanishes.
double mpl_beta_direct(const Configuration& config, double mu_hat);

}  // namespace gmrfig
