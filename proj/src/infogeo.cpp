#include "gmrfig/infogeo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gmrfig/errors.hpp"

namespace gmrfig {

PatchStats decompose_patch_covariance(const Matrix9d& sigma_p) {
  PatchStats s;
  s.sigma_p = sigma_p;
  for (int i = 0, ri = 0; i < 9; ++i) {
    if (i == kPatchCenter) continue;
    s.rho(ri) = sigma_p(kPatchCenter, i);
    for (int j = 0, rj = 0; j < 9; ++j) {
      if (j == kPatchCenter) continue;
      s.sigma_minus(ri, rj) = sigma_p(i, j);
      ++rj;
    }
    ++ri;
  }
  s.center_variance = sigma_p(kPatchCenter, kPatchCenter);
  s.degenerate = !(s.center_variance > 0.0) || std::abs(s.sigma_minus.sum()) < kDegenerateSum;
  return s;
}

PatchStats patch_covariance(std::span<const Patch> patches) {
  if (patches.size() < 2) throw InvalidParameter("patch covariance needs at least 2 patches");
  const double n = static_cast<double>(patches.size());
  Eigen::Matrix<double, 9, 1> mean = Eigen::Matrix<double, 9, 1>::Zero();
  for (const Patch& p : patches) mean += Eigen::Map<const Eigen::Matrix<double, 9, 1>>(p.data());
  mean /= n;
  Matrix9d acc = Matrix9d::Zero();
  for (const Patch& p : patches) {
    const Eigen::Matrix<double, 9, 1> d =
        Eigen::Map<const Eigen::Matrix<double, 9, 1>>(p.data()) - mean;
    acc.selfadjointView<Eigen::Lower>().rankUpdate(d);
  }
  Matrix9d cov = acc.selfadjointView<Eigen::Lower>();
  return decompose_patch_covariance(cov / n);
}

PatchStats patch_covariance(const Configuration& config) {
  // Under toroidal wrap each patch coordinate is a permutation of the cells, so
  // all nine coordinate means equal the lattice mean.
  const double mean = sample_mean_var(config).mean;
  const int rows = config.rows();
  const int cols = config.cols();
  Matrix9d acc = Matrix9d::Zero();
  Eigen::Matrix<double, 9, 1> d;
  for (int r = 0; r < rows; ++r) {
    const int up = r == 0 ? rows - 1 : r - 1;
    const int down = r + 1 == rows ? 0 : r + 1;
    for (int c = 0; c < cols; ++c) {
      const int left = c == 0 ? cols - 1 : c - 1;
      const int right = c + 1 == cols ? 0 : c + 1;
      d << config(up, left), config(up, c), config(up, right), config(r, left), config(r, c),
          config(r, right), config(down, left), config(down, c), config(down, right);
      d.array() -= mean;
      acc.selfadjointView<Eigen::Lower>().rankUpdate(d);
    }
  }
  Matrix9d cov = acc.selfadjointView<Eigen::Lower>();
  return decompose_patch_covariance(cov / static_cast<double>(config.size()));
}

std::string_view to_string(TensorKind kind) {
  return kind == TensorKind::type1 ? "type-1" : "type-2";
}

std::string_view to_string(FisherComponent component) {
  switch (component) {
    case FisherComponent::mumu: return "mumu";
    case FisherComponent::s2s2: return "s2s2";
    case FisherComponent::s2b: return "s2b";
    case FisherComponent::bb: return "bb";
  }
  return "?";
}

FisherComponent parse_component(std::string_view name) {
  if (name == "mumu") return FisherComponent::mumu;
  if (name == "s2s2") return FisherComponent::s2s2;
  if (name == "s2b") return FisherComponent::s2b;
  if (name == "bb") return FisherComponent::bb;
  throw InvalidParameter("unknown tensor component '" + std::string(name) +
                         "' (expected mumu, s2s2, s2b or bb)");
}

Eigen::Matrix3d FisherTensor::matrix() const {
  Eigen::Matrix3d m;
  m << x, 0.0, 0.0,
       0.0, y, w,
       0.0, w, z;
  return m;
}

double FisherTensor::component(FisherComponent c) const {
  switch (c) {
    case FisherComponent::mumu: return x;
    case FisherComponent::s2s2: return y;
    case FisherComponent::s2b: return w;
    case FisherComponent::bb: return z;
  }
  return 0.0;
}

namespace {

// Covariance sums scaled by 1/sigma^2. Every tensor term is a polynomial in
// these, so working with them keeps large-variance fields from overflowing.
struct ScaledStats {
  Vector8d rho;
  Matrix8d sigma_minus;
  double rho_sum;
  double sigma_minus_sum;
};

ScaledStats scaled(const ModelParams& params, const PatchStats& stats) {
  params.validate();
  ScaledStats s{stats.rho / params.sigma2, stats.sigma_minus / params.sigma2, 0.0, 0.0};
  s.rho_sum = s.rho.sum();
  s.sigma_minus_sum = s.sigma_minus.sum();
  return s;
}

}  // namespace

FisherTensor tensor_g2(const ModelParams& params, const PatchStats& stats) {
  const ScaledStats s = scaled(params, stats);
  const double s2 = params.sigma2;
  const double b = params.beta;
  const double damp = 1.0 - b * params.delta;
  // 2 beta ||rho||+ - beta^2 ||Sigma-||+, in units of sigma^2
  const double q = 2.0 * b * s.rho_sum - b * b * s.sigma_minus_sum;

  FisherTensor g;
  g.kind = TensorKind::type2;
  g.x = damp * damp / s2;
  g.y = (0.5 - q) / (s2 * s2);
  g.w = (s.rho_sum - b * s.sigma_minus_sum) / s2;
  g.z = s.sigma_minus_sum;
  return g;
}

FisherTensor tensor_g1(const ModelParams& params, const PatchStats& stats) {
  const ScaledStats s = scaled(params, stats);
  const double s2 = params.sigma2;
  const double b = params.beta;
  const double damp = 1.0 - b * params.delta;
  const double q = 2.0 * b * s.rho_sum - b * b * s.sigma_minus_sum;

  const double rr = kron_sum(s.rho, s.rho);
  const double rs = kron_sum(s.rho, s.sigma_minus);
  const double ss = kron_sum(s.sigma_minus, s.sigma_minus);

  FisherTensor g;
  g.kind = TensorKind::type1;
  g.x = damp * damp / s2 * (1.0 - q);
  // Fourth moment of the Gaussian residual is 3 (E r^2)^2; its beta^4 part
  // contributes 3/4 ||Sigma- (x) Sigma-||+ after the 1/(4 sigma^8) prefactor.
  g.y = (0.5 - q + 3.0 * b * b * rr - 3.0 * b * b * b * rs + 0.75 * b * b * b * b * ss) /
        (s2 * s2);
  g.w = (s.rho_sum - b * s.sigma_minus_sum) / s2 -
        (6.0 * b * rr - 9.0 * b * b * rs + 3.0 * b * b * b * ss) / (2.0 * s2);
  g.z = s.sigma_minus_sum + 2.0 * rr - 6.0 * b * rs + 3.0 * b * b * ss;
  return g;
}

double gaussian_entropy(double sigma2) {
  return 0.5 * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0);
}

double entropy(const ModelParams& params, const PatchStats& stats) {
  const ScaledStats s = scaled(params, stats);
  const double b = params.beta;
  return gaussian_entropy(params.sigma2) - (b * s.rho_sum - 0.5 * b * b * s.sigma_minus_sum);
}

double mpl_beta(const PatchStats& stats) {
  const double denom = stats.sigma_minus_sum();
  if (!(std::abs(denom) >= kDegenerateSum)) {
    throw DegenerateField("neighbour covariance sums to zero; beta is not identifiable");
  }
  return stats.rho_sum() / denom;
}

SampleMoments sample_mean_var(std::span<const double> values) {
  if (values.size() < 2) throw InvalidParameter("sample moments need at least 2 values");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  SampleMoments m;
  m.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.variance = ss / n;
  m.degenerate = !(m.variance > 0.0);
  return m;
}

SampleMoments sample_mean_var(const Configuration& config) {
  return sample_mean_var(config.cells());
}

double asymptotic_variance(const FisherTensor& g1, const FisherTensor& g2) {
  if (g2.z == 0.0) throw DegenerateField("type-II beta information is zero");
  return g1.z / (g2.z * g2.z);
}

double ds_squared(const FisherTensor& t, const Displacement& d) {
  return t.x * d.dmu * d.dmu + t.y * d.dsigma2 * d.dsigma2 + t.z * d.dbeta * d.dbeta +
         2.0 * t.w * d.dbeta * d.dsigma2;
}

}  // namespace gmrfig
