#pragma once

#include <filesystem>
#include <iosfwd>

#include "gmrfig/lattice.hpp"

namespace gmrfig {

/// A stored field together with the inverse temperature it was sampled at.
struct Snapshot {
  Configuration config;
  double beta_set = 0.0;
};

// Text format:
//   GMRF-SNAPSHOT v1 <rows> <cols> <beta_set>
//   <cols values>            (one lattice row per line, 17 significant digits)
void write_snapshot(std::ostream& out, const Configuration& config, double beta_set);
Snapshot read_snapshot(std::istream& in);

void save_snapshot(const std::filesystem::path& path, const Configuration& config,
                   double beta_set);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace gmrfig
