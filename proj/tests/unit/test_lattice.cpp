#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gmrfig/errors.hpp"
#include "gmrfig/infogeo.hpp"
#include "gmrfig/lattice.hpp"

using namespace gmrfig;

namespace {

Configuration counting_3x3() {
  std::vector<double> v(9);
  std::iota(v.begin(), v.end(), 1.0);
  return Configuration(3, 3, v);
}

}  // namespace

TEST_CASE("configuration invariants") {
  CHECK_THROWS_AS(Configuration(2, 3, std::vector<double>(6, 0.0)), InvalidParameter);
  CHECK_THROWS_AS(Configuration(3, 3, std::vector<double>(8, 0.0)), InvalidParameter);
  std::vector<double> bad(9, 0.0);
  bad[4] = std::nan("");
  CHECK_THROWS_AS(Configuration(3, 3, bad), InvalidParameter);
  bad[4] = INFINITY;
  CHECK_THROWS_AS(Configuration(3, 3, bad), InvalidParameter);
}

TEST_CASE("new_iid_configuration") {
  const auto a = new_iid_configuration(3, 3, 0.0, 1.0, 7);
  const auto b = new_iid_configuration(3, 3, 0.0, 1.0, 7);
  CHECK(a == b);
  CHECK(a.size() == 9);
  for (double v : a.cells()) CHECK(std::isfinite(v));
  CHECK_FALSE(a == new_iid_configuration(3, 3, 0.0, 1.0, 8));

  CHECK_THROWS_AS(new_iid_configuration(2, 3, 0.0, 1.0, 0), InvalidParameter);
  CHECK_THROWS_AS(new_iid_configuration(3, 3, 0.0, 0.0, 0), InvalidParameter);
  CHECK_THROWS_AS(new_iid_configuration(3, 3, 0.0, -1.0, 0), InvalidParameter);

  const auto big = new_iid_configuration(512, 512, 0.0, 5.0, 1);
  CHECK(std::abs(sample_mean_var(big).variance - 5.0) < 0.05 * 5.0);
}

TEST_CASE("neighbors order and wrap") {
  const auto flat = Configuration::constant(3, 3, 5.0);
  for (double v : neighbors(flat, {1, 1})) CHECK(v == 5.0);

  const auto c = counting_3x3();
  const Neighborhood centre = neighbors(c, {1, 1});
  CHECK(std::vector<double>(centre.begin(), centre.end()) ==
        std::vector<double>{1, 2, 3, 4, 6, 7, 8, 9});

  // corner (0,0): NW wraps to (2,2), N to (2,0), NE to (2,1), W to (0,2), ...
  const Neighborhood corner = neighbors(c, {0, 0});
  CHECK(std::vector<double>(corner.begin(), corner.end()) ==
        std::vector<double>{9, 7, 8, 3, 2, 6, 4, 5});

  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 3; ++col) {
      const auto eta = neighbors(c, {r, col});
      CHECK(neighbor_sum(c, r, col) == doctest::Approx(std::accumulate(eta.begin(), eta.end(), 0.0)));
    }
  }
}

TEST_CASE("extract_patches") {
  const auto flat = Configuration::constant(3, 3, 2.5);
  const auto fp = extract_patches(flat);
  REQUIRE(fp.size() == 9);
  for (const auto& p : fp) {
    for (double v : p) CHECK(v == 2.5);
  }

  const auto field = new_iid_configuration(5, 7, 1.0, 2.0, 3);
  const auto patches = extract_patches(field);
  REQUIRE(patches.size() == field.size());
  for (std::size_t k = 0; k < patches.size(); ++k) {
    CHECK(patches[k][kPatchCenter] == field.cells()[k]);
    const int r = static_cast<int>(k) / field.cols();
    const int c = static_cast<int>(k) % field.cols();
    const auto eta = neighbors(field, {r, c});
    for (int j = 0, e = 0; j < 9; ++j) {
      if (j == kPatchCenter) continue;
      CHECK(patches[k][static_cast<std::size_t>(j)] == eta[static_cast<std::size_t>(e++)]);
    }
  }

  std::vector<double> hot(16, 0.0);
  hot[5] = 1.0;
  int containing = 0;
  for (const auto& p : extract_patches(Configuration(4, 4, hot))) {
    if (std::find(p.begin(), p.end(), 1.0) != p.end()) ++containing;
  }
  CHECK(containing == 9);
}

TEST_CASE("shift equivariance permutes patches") {
  const auto field = new_iid_configuration(6, 5, 0.0, 1.0, 11);
  const auto moved = shifted(field, 2, -1);
  CHECK(moved(2, 4) == field(0, 0));
  auto a = extract_patches(field);
  auto b = extract_patches(moved);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}
