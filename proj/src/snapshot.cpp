#include "gmrfig/snapshot.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gmrfig/errors.hpp"
#include "gmrfig/format.hpp"

namespace gmrfig {

namespace {

constexpr const char* kMagic = "GMRF-SNAPSHOT";
constexpr const char* kVersion = "v1";

}  // namespace

void write_snapshot(std::ostream& out, const Configuration& config, double beta_set) {
  out << kMagic << ' ' << kVersion << ' ' << config.rows() << ' ' << config.cols() << ' '
      << format_g17(beta_set) << '\n';
  for (int r = 0; r < config.rows(); ++r) {
    for (int c = 0; c < config.cols(); ++c) {
      if (c) out << ' ';
      out << format_g17(config(r, c));
    }
    out << '\n';
  }
}

Snapshot read_snapshot(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("snapshot: missing header");
  std::istringstream hs(header);
  std::string magic, version;
  int rows = 0, cols = 0;
  double beta = 0.0;
  if (!(hs >> magic >> version >> rows >> cols >> beta) || magic != kMagic ||
      version != kVersion) {
    throw FormatError("snapshot: malformed header '" + header + "'");
  }
  if (rows < 3 || cols < 3) throw FormatError("snapshot: lattice smaller than 3x3");
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(rows) * cols);
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      cells.push_back(std::stod(token, &used));
      if (used != token.size()) throw FormatError("snapshot: bad value '" + token + "'");
    } catch (const std::logic_error&) {
      throw FormatError("snapshot: bad value '" + token + "'");
    }
  }
  if (cells.size() != static_cast<std::size_t>(rows) * cols) {
    throw FormatError("snapshot: expected " + std::to_string(rows * cols) + " values, got " +
                      std::to_string(cells.size()));
  }
  try {
    return Snapshot{Configuration(rows, cols, std::move(cells)), beta};
  } catch (const InvalidParameter& e) {
    throw FormatError(std::string("snapshot: ") + e.what());
  }
}

void save_snapshot(const std::filesystem::path& path, const Configuration& config,
                   double beta_set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_snapshot(out, config, beta_set);
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open snapshot " + path.string());
  return read_snapshot(in);
}

}  // namespace gmrfig
