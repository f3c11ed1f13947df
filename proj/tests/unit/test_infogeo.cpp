#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gmrfig/errors.hpp"
#include "gmrfig/infogeo.hpp"

using namespace gmrfig;

namespace {

// Stats with chosen entry sums: rho spread evenly, sigma_minus constant.
PatchStats stats_with_sums(double rho_sum, double sm_sum, double center = 5.0) {
  Matrix9d s = Matrix9d::Zero();
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      if (i == kPatchCenter && j == kPatchCenter) {
        s(i, j) = center;
      } else if (i == kPatchCenter || j == kPatchCenter) {
        s(i, j) = rho_sum / 8.0;
      } else {
        s(i, j) = sm_sum / 64.0;
      }
    }
  }
  return decompose_patch_covariance(s);
}

PatchStats iid_stats(double s2) { return decompose_patch_covariance(s2 * Matrix9d::Identity()); }

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return k;
}

}  // namespace

TEST_CASE("patch_covariance examples") {
  std::vector<Patch> same(10, Patch{1, 2, 3, 4, 5, 6, 7, 8, 9});
  const PatchStats flat = patch_covariance(same);
  CHECK(flat.sigma_p.isZero(0.0));
  CHECK(flat.rho.isZero(0.0));
  CHECK(flat.degenerate);

  CHECK_THROWS_AS(patch_covariance(std::vector<Patch>(1)), InvalidParameter);

  Patch p{1, -2, 0.5, 3, 4, 0, -1, 2, 7};
  Patch q{0, 1, 1.5, -3, 2, 1, 1, 0, 3};
  const PatchStats two = patch_covariance(std::vector<Patch>{p, q});
  Eigen::Map<const Eigen::Matrix<double, 9, 1>> pv(p.data()), qv(q.data());
  const Matrix9d expect = 0.25 * (pv - qv) * (pv - qv).transpose();
  CHECK((two.sigma_p - expect).cwiseAbs().maxCoeff() < 1e-14);

  std::mt19937_64 g(3);
  std::normal_distribution<double> z;
  std::vector<Patch> many(100000);
  for (auto& patch : many) {
    for (double& v : patch) v = z(g);
  }
  const PatchStats iid = patch_covariance(many);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      CHECK(std::abs(iid.sigma_p(i, j) - (i == j ? 1.0 : 0.0)) < 0.02);
    }
  }
}

TEST_CASE("lattice patch_covariance matches the patch list version") {
  const auto field = new_iid_configuration(9, 11, 2.0, 3.0, 5);
  const auto a = patch_covariance(field);
  const auto b = patch_covariance(extract_patches(field));
  CHECK((a.sigma_p - b.sigma_p).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("decomposition fields") {
  Matrix9d s;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) s(i, j) = 10 * i + j;
  }
  const PatchStats d = decompose_patch_covariance(s);
  CHECK(d.center_variance == 44);
  CHECK(d.rho(0) == 40);
  CHECK(d.rho(4) == 45);
  CHECK(d.sigma_minus(4, 4) == 55);
  CHECK(d.sigma_minus(3, 3) == 33);
}

TEST_CASE("kron_sum") {
  Eigen::Vector2d a(1, 2);
  CHECK(kron_sum(a, a) == 9.0);
  CHECK(kron_sum(Eigen::Vector2d::Zero(), Eigen::Matrix3d::Random()) == 0.0);
  for (int k = 0; k < 5; ++k) {
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(8, 8);
    const Eigen::MatrixXd y = Eigen::MatrixXd::Random(8, 8);
    const double explicit_sum = kron(x, y).sum();
    CHECK(std::abs(kron_sum(x, y) - explicit_sum) <= 1e-9 * std::max(1.0, std::abs(explicit_sum)));
  }
}

TEST_CASE("component names") {
  CHECK(parse_component("mumu") == FisherComponent::mumu);
  CHECK(parse_component("bb") == FisherComponent::bb);
  CHECK_THROWS_AS(parse_component("bogus"), InvalidParameter);
}

TEST_CASE("tensor_g1 plug-in") {
  const auto s = stats_with_sums(10, 50);
  const auto g = tensor_g1({0, 5, 0.1, 8}, s);
  CHECK(g.x == doctest::Approx(0.0056).epsilon(1e-12));
  CHECK(g.z == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(g.kind == TensorKind::type1);
}

TEST_CASE("tensor_g2 plug-in") {
  const auto s = stats_with_sums(10, 50);
  const auto g = tensor_g2({0, 5, 0.1, 8}, s);
  CHECK(g.x == doctest::Approx(0.008).epsilon(1e-12));
  CHECK(g.w == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(g.z == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(tensor_g2({0, 1, 0.125, 8}, s).x == 0.0);
}

TEST_CASE("beta = 0 with i.i.d. stats gives diag(1/s2, 1/2s4, 8)") {
  for (double s2 : {1.0, 5.0}) {
    for (const auto& g : {tensor_g1({0, s2, 0, 8}, iid_stats(s2)), tensor_g2({0, s2, 0, 8}, iid_stats(s2))}) {
      CHECK(g.x == doctest::Approx(1 / s2).epsilon(1e-14));
      CHECK(g.y == doctest::Approx(0.5 / (s2 * s2)).epsilon(1e-14));
      CHECK(g.z == doctest::Approx(8.0).epsilon(1e-14));
      CHECK(g.w == 0.0);
    }
  }
}

TEST_CASE("structural zeros and symmetry") {
  const auto s = stats_with_sums(3, 40);
  const Eigen::Matrix3d m = tensor_g1({0.2, 2, 0.05, 8}, s).matrix();
  CHECK(m(0, 1) == 0.0);
  CHECK(m(0, 2) == 0.0);
  CHECK(m(1, 0) == 0.0);
  CHECK(m(2, 0) == 0.0);
  CHECK(m(1, 2) == m(2, 1));
}

TEST_CASE("truncation remainder between type-I and type-II") {
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 200; ++k) {
    const double s2 = 0.5 + 5 * (u(g) + 1);
    const double b = 0.2 * u(g);
    const double a = 3 * u(g);
    const double c = 40 * (u(g) + 1.2);
    const auto s = stats_with_sums(a, c, s2);
    const ModelParams p{0, s2, b, 8};
    const auto g1 = tensor_g1(p, s);
    const auto g2 = tensor_g2(p, s);
    const double s4 = s2 * s2;
    const double rr = a * a, rs = a * c, ss = c * c;
    const double z_rem = (2 * rr - 6 * b * rs + 3 * b * b * ss) / s4;
    const double q = (2 * b * a - b * b * c) / s2;
    const double x_rem = -(1 - 8 * b) * (1 - 8 * b) / s2 * q;
    const double y_rem = (3 * b * b * rr - 3 * b * b * b * rs + 0.75 * b * b * b * b * ss) / (s4 * s4);
    const double w_rem = -(6 * b * rr - 9 * b * b * rs + 3 * b * b * b * ss) / (2 * s4 * s2);
    CHECK(std::abs((g1.z - g2.z) - z_rem) <= 1e-10 * std::max(1.0, std::abs(z_rem)));
    CHECK(std::abs((g1.x - g2.x) - x_rem) <= 1e-10 * std::max(1.0, std::abs(x_rem)));
    CHECK(std::abs((g1.y - g2.y) - y_rem) <= 1e-10 * std::max(1.0, std::abs(y_rem)));
    CHECK(std::abs((g1.w - g2.w) - w_rem) <= 1e-10 * std::max(1.0, std::abs(w_rem)));
  }
}

TEST_CASE("entropy") {
  const double hg = 0.5 * (std::log(10 * std::numbers::pi) + 1);
  CHECK(hg == doctest::Approx(2.2237).epsilon(1e-4));
  CHECK(entropy({0, 5, 0, 8}, stats_with_sums(7, 30)) == doctest::Approx(hg).epsilon(1e-14));
  const auto s = stats_with_sums(10, 50);
  CHECK(entropy({0, 5, 0.1, 8}, s) == doctest::Approx(hg - 0.15).epsilon(1e-13));

  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p{0, 1 + 4 * (u(g) + 1), 0.2 * u(g), 8};
    const auto st = stats_with_sums(5 * u(g), 60 * (u(g) + 1.1));
    const double tensor_form = gaussian_entropy(p.sigma2) -
                               (p.beta / p.sigma2 * st.rho_sum() -
                                0.5 * p.beta * p.beta * tensor_g2(p, st).z);
    CHECK(std::abs(entropy(p, st) - tensor_form) <= 1e-12);
  }
}

TEST_CASE("mpl_beta") {
  CHECK(mpl_beta(stats_with_sums(10, 50)) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(mpl_beta(iid_stats(3)) == 0.0);
  CHECK_THROWS_AS(mpl_beta(stats_with_sums(1, 0)), DegenerateField);
}

TEST_CASE("sample_mean_var") {
  const auto flat = sample_mean_var(Configuration::constant(3, 3, 3.0).cells());
  CHECK(flat.mean == 3.0);
  CHECK(flat.variance == 0.0);
  CHECK(flat.degenerate);
  const std::vector<double> two{0, 2};
  const auto m = sample_mean_var(two);
  CHECK(m.mean == 1.0);
  CHECK(m.variance == 1.0);
  CHECK_FALSE(m.degenerate);
  const auto big = sample_mean_var(new_iid_configuration(512, 512, 0, 5, 2));
  CHECK(std::abs(big.variance - 5) < 0.25);
}

TEST_CASE("asymptotic variance") {
  FisherTensor g1{0, 0, 9, 0, TensorKind::type1};
  FisherTensor g2{0, 0, 10, 0, TensorKind::type2};
  CHECK(asymptotic_variance(g1, g2) == doctest::Approx(0.09).epsilon(1e-14));
  g1.z = g2.z = 4;
  CHECK(asymptotic_variance(g1, g2) == doctest::Approx(0.25).epsilon(1e-14));
  g2.z = 0;
  CHECK_THROWS_AS(asymptotic_variance(g1, g2), DegenerateField);

  std::mt19937_64 g(6);
  std::uniform_real_distribution<double> pos(0.01, 100);
  for (int k = 0; k < 1000; ++k) {
    const double i1 = pos(g), i2 = pos(g);
    FisherTensor a{0, 0, i1, 0, TensorKind::type1}, b{0, 0, i2, 0, TensorKind::type2};
    const double expanded = 1 / i2 + (i1 - i2) / (i2 * i2);
    CHECK(std::abs(asymptotic_variance(a, b) - expanded) <= 1e-12 * std::max(1.0, expanded));
  }
}

TEST_CASE("ds_squared") {
  const FisherTensor t{0.2, 0.02, 8, 0, TensorKind::type2};
  CHECK(ds_squared(t, {0, 0, 0}) == 0.0);
  CHECK(ds_squared(t, {1, 0, 0}) == doctest::Approx(0.2));

  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 200; ++k) {
    const FisherTensor r{u(g), u(g), u(g), u(g), TensorKind::type1};
    const Eigen::Vector3d v(u(g), u(g), u(g));
    const double quad = v.dot(r.matrix() * v);
    CHECK(std::abs(ds_squared(r, {v(0), v(1), v(2)}) - quad) <= 1e-12 * std::max(1.0, std::abs(quad)));
  }
}
