#include "gmrfig/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gmrfig/errors.hpp"
#include "gmrfig/rng.hpp"

namespace gmrfig {

namespace {

// Row/column offsets in NW, N, NE, W, E, SW, S, SE order.
constexpr std::array<int, kMooreSupport> kDr = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr std::array<int, kMooreSupport> kDc = {-1, 0, 1, -1, 1, -1, 0, 1};

}  // namespace

Configuration::Configuration(int rows, int cols, std::vector<double> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows < 3 || cols < 3) {
    throw InvalidParameter("lattice must be at least 3x3, got " + std::to_string(rows) +
                           "x" + std::to_string(cols));
  }
  if (cells_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InvalidParameter("cell count does not match rows x cols");
  }
  for (double v : cells_) {
    if (!std::isfinite(v)) throw InvalidParameter("lattice cells must be finite");
  }
}

Configuration Configuration::constant(int rows, int cols, double value) {
  if (rows < 3 || cols < 3) throw InvalidParameter("lattice must be at least 3x3");
  return Configuration(rows, cols,
                       std::vector<double>(static_cast<std::size_t>(rows) * cols, value));
}

Configuration new_iid_configuration(int rows, int cols, double mean, double variance,
                                    std::uint64_t seed) {
  if (!(variance > 0.0)) throw InvalidParameter("variance must be positive");
  if (rows < 3 || cols < 3) throw InvalidParameter("lattice must be at least 3x3");
  Rng rng = make_rng(seed, Stream::initial_field, 0);
  std::normal_distribution<double> gauss(mean, std::sqrt(variance));
  std::vector<double> cells(static_cast<std::size_t>(rows) * cols);
  for (double& c : cells) c = gauss(rng);
  return Configuration(rows, cols, std::move(cells));
}

Neighborhood neighbors(const Configuration& config, SiteIndex site) {
  Neighborhood out{};
  for (int k = 0; k < kMooreSupport; ++k) {
    out[k] = config(config.wrap_row(site.row + kDr[k]), config.wrap_col(site.col + kDc[k]));
  }
  return out;
}

double neighbor_sum(const Configuration& config, int row, int col) noexcept {
  const int up = row == 0 ? config.rows() - 1 : row - 1;
  const int down = row + 1 == config.rows() ? 0 : row + 1;
  const int left = col == 0 ? config.cols() - 1 : col - 1;
  const int right = col + 1 == config.cols() ? 0 : col + 1;
  return config(up, left) + config(up, col) + config(up, right) + config(row, left) +
         config(row, right) + config(down, left) + config(down, col) + config(down, right);
}

std::vector<Patch> extract_patches(const Configuration& config) {
  std::vector<Patch> patches;
  patches.reserve(config.size());
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      const Neighborhood nb = neighbors(config, {r, c});
      Patch p{};
      for (int k = 0, slot = 0; k < kMooreSupport; ++k, ++slot) {
        if (slot == kPatchCenter) ++slot;
        p[slot] = nb[k];
      }
      p[kPatchCenter] = config(r, c);
      patches.push_back(p);
    }
  }
  return patches;
}

Configuration shifted(const Configuration& config, int dr, int dc) {
  std::vector<double> cells(config.size());
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      cells[static_cast<std::size_t>(r) * config.cols() + c] =
          config(config.wrap_row(r - dr), config.wrap_col(c - dc));
    }
  }
  return Configuration(config.rows(), config.cols(), std::move(cells));
}

}  // namespace gmrfig
