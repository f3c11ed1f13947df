#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "gmrfig/sampler.hpp"

namespace gmrfig {

/// Frozen trajectory.csv header. The trailing `status` column holds `ok` or
/// `degenerate`; degenerate rows carry `nan` in the estimate columns.
inline constexpr std::string_view kTrajectoryHeader =
    "iteration,beta_set,mu_hat,sigma2_hat,beta_mpl,H,g1_mumu,g1_s2s2,g1_s2b,g1_bb,"
    "g2_mumu,g2_s2s2,g2_s2b,g2_bb,upsilon_beta,acceptance_rate,status";

void write_trajectory_header(std::ostream& out);
void write_trajectory_row(std::ostream& out, const TrajectoryRecord& rec);
void write_trajectory(std::ostream& out, const std::vector<TrajectoryRecord>& records);

/// Parses a file produced by write_trajectory. Throws FormatError.
std::vector<TrajectoryRecord> read_trajectory(std::istream& in);

void save_trajectory(const std::filesystem::path& path,
                     const std::vector<TrajectoryRecord>& records);
std::vector<TrajectoryRecord> load_trajectory(const std::filesystem::path& path);

}  // namespace gmrfig
