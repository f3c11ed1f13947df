#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gmrfig {

/// Neighbourhood support of the second-order (Moore) system.
inline constexpr int kMooreSupport = 8;

/// Index of the centre value inside a lexicographically ordered 3x3 patch.
inline constexpr int kPatchCenter = 4;

using Neighborhood = std::array<double, kMooreSupport>;
using Patch = std::array<double, 9>;

struct SiteIndex {
  int row = 0;
  int col = 0;
};

/// A rows x cols lattice of real cell values stored row-major.
///
/// The lattice is a torus: neighbour lookups wrap around both edges, so every
/// site sees exactly eight neighbours.
class Configuration {
 public:
  Configuration(int rows, int cols, std::vector<double> cells);

  static Configuration constant(int rows, int cols, double value);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return cells_.size(); }

  double operator()(int row, int col) const noexcept {
    return cells_[static_cast<std::size_t>(row) * cols_ + col];
  }
  double& operator()(int row, int col) noexcept {
    return cells_[static_cast<std::size_t>(row) * cols_ + col];
  }

  std::span<const double> cells() const noexcept { return cells_; }

  int wrap_row(int row) const noexcept { return ((row % rows_) + rows_) % rows_; }
  int wrap_col(int col) const noexcept { return ((col % cols_) + cols_) % cols_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<double> cells_;
};

/// Field of i.i.d. Gaussian cells; deterministic for a given seed.
Configuration new_iid_configuration(int rows, int cols, double mean, double variance,
                                    std::uint64_t seed);

/// Moore neighbours of `site` in the order NW, N, NE, W, E, SW, S, SE.
Neighborhood neighbors(const Configuration& config, SiteIndex site);

/// Sum of the eight neighbour values, without materialising them.
double neighbor_sum(const Configuration& config, int row, int col) noexcept;

/// One 3x3 patch per site, row-major by centre site. Element 4 is the centre.
std::vector<Patch> extract_patches(const Configuration& config);

/// Cyclic shift by (dr, dc): result(r, c) = config(r - dr, c - dc).
Configuration shifted(const Configuration& config, int dr, int dc);

}  // namespace gmrfig
