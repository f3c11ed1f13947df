#pragma once

#include <Eigen/Dense>
#include <span>
#include <string_view>

#include "gmrfig/gmrf.hpp"
#include "gmrfig/lattice.hpp"

namespace gmrfig {

using Matrix9d = Eigen::Matrix<double, 9, 9>;
using Matrix8d = Eigen::Matrix<double, 8, 8>;
using Vector8d = Eigen::Matrix<double, 8, 1>;

/// Covariance of the 3x3 local configuration patches and its split into the
/// neighbour block and the centre-to-neighbour covariances.
struct PatchStats {
  Matrix9d sigma_p = Matrix9d::Zero();
  Matrix8d sigma_minus = Matrix8d::Zero();  ///< sigma_p without row/column 4
  Vector8d rho = Vector8d::Zero();          ///< row 4 of sigma_p without entry 4
  double center_variance = 0.0;             ///< sigma_p(4, 4)
  bool degenerate = false;

  double rho_sum() const { return rho.sum(); }
  double sigma_minus_sum() const { return sigma_minus.sum(); }
};

/// Below this magnitude the neighbour block sum is treated as zero.
inline constexpr double kDegenerateSum = 1e-12;

/// Sample covariance (divisor n) of the patch vectors, centred on the
/// per-coordinate means. Needs at least two patches.
PatchStats patch_covariance(std::span<const Patch> patches);

/// Same statistics computed straight from a lattice, without materialising
/// the patch list.
PatchStats patch_covariance(const Configuration& config);

/// Builds the decomposition fields from a full 9x9 covariance.
PatchStats decompose_patch_covariance(const Matrix9d& sigma_p);

/// Entry sum of the Kronecker product A (x) B, via ||A (x) B||+ = ||A||+ ||B||+.
template <typename DerivedA, typename DerivedB>
double kron_sum(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return a.sum() * b.sum();
}

enum class TensorKind { type1, type2 };
enum class FisherComponent { mumu, s2s2, s2b, bb };

std::string_view to_string(TensorKind kind);
std::string_view to_string(FisherComponent component);
/// Accepts mumu, s2s2, s2b, bb; throws InvalidParameter otherwise.
FisherComponent parse_component(std::string_view name);

/// The four distinct non-zero entries of a metric tensor with layout
///   [[x, 0, 0],
///    [0, y, w],
///    [0, w, z]]   over (mu, sigma^2, beta).
struct FisherTensor {
  double x = 0.0;  ///< I_mu,mu
  double y = 0.0;  ///< I_s2,s2
  double z = 0.0;  ///< I_beta,beta
  double w = 0.0;  ///< I_s2,beta
  TensorKind kind = TensorKind::type1;

  Eigen::Matrix3d matrix() const;
  double component(FisherComponent c) const;
};

/// Type-I (score outer product) metric tensor.
FisherTensor tensor_g1(const ModelParams& params, const PatchStats& stats);

/// Type-II (negative expected Hessian) metric tensor.
FisherTensor tensor_g2(const ModelParams& params, const PatchStats& stats);

/// Entropy of the local conditional density, in nats.
double entropy(const ModelParams& params, const PatchStats& stats);

/// Entropy of N(mu, sigma2): 0.5 (log(2 pi sigma2) + 1).
double gaussian_entropy(double sigma2);

/// Maximum pseudo-likelihood estimate ||rho||+ / ||sigma_minus||+.
/// Throws DegenerateField when the neighbour block sums to (numerically) zero.
double mpl_beta(const PatchStats& stats);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  ///< divisor n
  bool degenerate = false;
};

SampleMoments sample_mean_var(const Configuration& config);
SampleMoments sample_mean_var(std::span<const double> values);

/// upsilon_beta = I1_bb / (I2_bb)^2. Throws DegenerateField if I2_bb == 0.
double asymptotic_variance(const FisherTensor& g1, const FisherTensor& g2);

struct Displacement {
  double dmu = 0.0;
  double dsigma2 = 0.0;
  double dbeta = 0.0;
};

/// Squared line element ds^2 = x dmu^2 + y ds2^2 + z db^2 + 2 w db ds2.
double ds_squared(const FisherTensor& tensor, const Displacement& d);

}  // namespace gmrfig
