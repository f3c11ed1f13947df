#include "gmrfig/trajectory_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "gmrfig/errors.hpp"
#include "gmrfig/format.hpp"

namespace gmrfig {

namespace {

constexpr int kColumns = 17;

double parse_field(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw FormatError("trajectory: line " + std::to_string(line) + ": bad number '" + token + "'");
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void write_trajectory_header(std::ostream& out) { out << kTrajectoryHeader << '\n'; }

void write_trajectory_row(std::ostream& out, const TrajectoryRecord& rec) {
  out << rec.iteration;
  for (double v : {rec.beta_set, rec.mu_hat, rec.sigma2_hat, rec.beta_mpl, rec.entropy, rec.g1.x,
                   rec.g1.y, rec.g1.w, rec.g1.z, rec.g2.x, rec.g2.y, rec.g2.w, rec.g2.z,
                   rec.upsilon_beta, rec.acceptance_rate}) {
    out << ',' << format_g17(v);
  }
  out << ',' << (rec.degenerate ? "degenerate" : "ok") << '\n';
}

void write_trajectory(std::ostream& out, const std::vector<TrajectoryRecord>& records) {
  write_trajectory_header(out);
  for (const auto& rec : records) write_trajectory_row(out, rec);
}

std::vector<TrajectoryRecord> read_trajectory(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("trajectory: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) throw FormatError("trajectory: unexpected header");

  std::vector<TrajectoryRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (static_cast<int>(f.size()) != kColumns) {
      throw FormatError("trajectory: line " + std::to_string(lineno) + ": expected " +
                        std::to_string(kColumns) + " fields");
    }
    double v[kColumns - 1];
    for (int i = 0; i < kColumns - 1; ++i) v[i] = parse_field(f[static_cast<std::size_t>(i)], lineno);

    TrajectoryRecord rec;
    rec.iteration = static_cast<int>(v[0]);
    if (rec.iteration != v[0]) {
      throw FormatError("trajectory: line " + std::to_string(lineno) + ": bad iteration");
    }
    rec.beta_set = v[1];
    rec.mu_hat = v[2];
    rec.sigma2_hat = v[3];
    rec.beta_mpl = v[4];
    rec.entropy = v[5];
    rec.g1 = {v[6], v[7], v[9], v[8], TensorKind::type1};
    rec.g2 = {v[10], v[11], v[13], v[12], TensorKind::type2};
    rec.upsilon_beta = v[14];
    rec.acceptance_rate = v[15];
    if (f[16] == "ok") {
      rec.degenerate = false;
    } else if (f[16] == "degenerate") {
      rec.degenerate = true;
    } else {
      throw FormatError("trajectory: line " + std::to_string(lineno) + ": bad status '" +
                        f[16] + "'");
    }
    records.push_back(rec);
  }
  return records;
}

void save_trajectory(const std::filesystem::path& path,
                     const std::vector<TrajectoryRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  write_trajectory(out, records);
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

std::vector<TrajectoryRecord> load_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return read_trajectory(in);
}

}  // namespace gmrfig
