#include "gmrfig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gmrfig/errors.hpp"

namespace gmrfig {

namespace {

constexpr double kPsdTolerance = 1e-10;

template <typename Matrix>
Matrix psd_root(const Matrix& cov, const char* what) {
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if (!((cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale)) {
    throw InvalidParameter(std::string(what) + ": covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw InvalidParameter(std::string(what) + ": eigen-decomposition failed");
  }
  if (eig.eigenvalues().minCoeff() < -kPsdTolerance) {
    throw InvalidParameter(std::string(what) + ": covariance is not positive semidefinite");
  }
  const auto lambda = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * lambda.asDiagonal();
}

McEstimate summarize(double sum, double sum_sq, int n) {
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  return {mean, std::sqrt(var / n)};
}

}  // namespace

NeighborhoodModel::NeighborhoodModel(double mean, const Matrix9d& cov9)
    : mean_(mean), cov9_(cov9), root_(psd_root(cov9, "NeighborhoodModel")) {
  if (!std::isfinite(mean)) throw InvalidParameter("NeighborhoodModel: mean must be finite");
}

NeighborhoodModel NeighborhoodModel::iid(double mean, double sigma2) {
  return NeighborhoodModel(mean, sigma2 * Matrix9d::Identity());
}

Patch NeighborhoodModel::sample(Rng& rng) const {
  std::normal_distribution<double> z01;
  Eigen::Matrix<double, 9, 1> z;
  for (int k = 0; k < 9; ++k) z(k) = z01(rng);
  const Eigen::Matrix<double, 9, 1> v = root_ * z;
  Patch p;
  for (int k = 0; k < 9; ++k) p[static_cast<std::size_t>(k)] = mean_ + v(k);
  return p;
}

McEstimate mc_fisher_component(const NeighborhoodModel& model, const ModelParams& params,
                               FisherComponent which, TensorKind kind, int n_samples,
                               std::uint64_t seed) {
  params.validate();
  if (n_samples < kMinOracleSamples) {
    throw InvalidParameter("mc_fisher_component needs at least 10^4 samples");
  }
  Rng rng = make_rng(seed, Stream::oracle, 0);
  const double mu = params.mu;
  const double s2 = params.sigma2;
  const double b = params.beta;
  const double damp = 1.0 - b * params.delta;

  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const Patch p = model.sample(rng);
    double S = 0.0;
    for (int j = 0; j < 9; ++j) {
      if (j != kPatchCenter) S += p[static_cast<std::size_t>(j)] - mu;
    }
    const double u = p[kPatchCenter] - mu;
    const double r = u - b * S;

    double v = 0.0;
    if (kind == TensorKind::type1) {
      // first derivatives of log p
      const double d_mu = damp * r / s2;
      const double d_s2 = -0.5 / s2 + r * r / (2.0 * s2 * s2);
      const double d_b = r * S / s2;
      switch (which) {
        case FisherComponent::mumu: v = d_mu * d_mu; break;
        case FisherComponent::s2s2: v = d_s2 * d_s2; break;
        case FisherComponent::s2b: v = d_s2 * d_b; break;
        case FisherComponent::bb: v = d_b * d_b; break;
      }
    } else {
      // minus second derivatives of log p
      switch (which) {
        case FisherComponent::mumu: v = damp * damp / s2; break;
        case FisherComponent::s2s2: v = -0.5 / (s2 * s2) + r * r / (s2 * s2 * s2); break;
        case FisherComponent::s2b: v = r * S / (s2 * s2); break;
        case FisherComponent::bb: v = S * S / s2; break;
      }
    }
    sum += v;
    sum_sq += v * v;
  }
  return summarize(sum, sum_sq, n_samples);
}

IsserlisCheck isserlis_fourth_moment(const Eigen::MatrixXd& cov, std::array<int, 4> idx,
                                     int n_samples, std::uint64_t seed) {
  const auto k = cov.rows();
  if (k < 2 || k > 4 || cov.cols() != k) {
    throw InvalidParameter("isserlis_fourth_moment: covariance must be 2x2 to 4x4");
  }
  for (int i : idx) {
    if (i < 0 || i >= k) throw InvalidParameter("isserlis_fourth_moment: index out of range");
  }
  if (n_samples < 2) throw InvalidParameter("isserlis_fourth_moment: need >= 2 samples");
  const Eigen::MatrixXd root = psd_root(cov, "isserlis_fourth_moment");

  const auto [a, b, c, d] = idx;
  IsserlisCheck out;
  out.closed = cov(a, b) * cov(c, d) + cov(a, c) * cov(b, d) + cov(a, d) * cov(b, c);

  Rng rng = make_rng(seed, Stream::oracle, 1);
  std::normal_distribution<double> z01;
  Eigen::VectorXd z(k);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    for (Eigen::Index i = 0; i < k; ++i) z(i) = z01(rng);
    const Eigen::VectorXd v = root * z;
    const double m = v(a) * v(b) * v(c) * v(d);
    sum += m;
    sum_sq += m * m;
  }
  const McEstimate e = summarize(sum, sum_sq, n_samples);
  out.mc = e.estimate;
  out.std_error = e.std_error;
  return out;
}

McEstimate mc_central_moment(const NeighborhoodModel& model, const std::vector<int>& idx,
                             int n_samples, std::uint64_t seed) {
  if (idx.empty()) throw InvalidParameter("mc_central_moment: no indices");
  for (int i : idx) {
    if (i < 0 || i >= 9) throw InvalidParameter("mc_central_moment: index out of range");
  }
  if (n_samples < 2) throw InvalidParameter("mc_central_moment: need >= 2 samples");
  Rng rng = make_rng(seed, Stream::oracle, 2);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const Patch p = model.sample(rng);
    double m = 1.0;
    for (int i : idx) m *= p[static_cast<std::size_t>(i)] - model.mean();
    sum += m;
    sum_sq += m * m;
  }
  return summarize(sum, sum_sq, n_samples);
}

double mpl_beta_direct(const Configuration& config, double mu_hat) {
  double num = 0.0, den = 0.0;
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      const Neighborhood eta = neighbors(config, {r, c});
      double S = 0.0;
      for (double xj : eta) S += xj - mu_hat;
      num += (config(r, c) - mu_hat) * S;
      den += S * S;
    }
  }
  if (!(den / static_cast<double>(config.size()) >= kDegenerateSum)) {
    throw DegenerateField("neighbour sums vanish; beta is not identifiable");
  }
  return num / den;
}

}  // namespace gmrfig
