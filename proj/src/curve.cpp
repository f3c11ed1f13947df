#include "gmrfig/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "gmrfig/errors.hpp"
#include "gmrfig/format.hpp"

namespace gmrfig {

namespace {

constexpr double kGridTolerance = 1e-9;

FisherCurve reversed(const FisherCurve& c) {
  FisherCurve r = c;
  std::reverse(r.points.begin(), r.points.end());
  std::reverse(r.betas.begin(), r.betas.end());
  return r;
}

double distance(const CurvePoint& a, const CurvePoint& b) {
  return std::sqrt((a.i1 - b.i1) * (a.i1 - b.i1) + (a.i2 - b.i2) * (a.i2 - b.i2) +
                   (a.h - b.h) * (a.h - b.h));
}

}  // namespace

std::string_view to_string(Leg leg) { return leg == Leg::forward ? "forward" : "backward"; }

std::string_view to_string(CurveFormat format) {
  return format == CurveFormat::csv ? "csv" : "json";
}

CurveFormat parse_curve_format(std::string_view name) {
  if (name == "csv") return CurveFormat::csv;
  if (name == "json") return CurveFormat::json;
  throw InvalidParameter("unknown curve format '" + std::string(name) + "'");
}

void FisherCurve::validate() const {
  if (points.size() != betas.size()) throw InvalidParameter("curve: points/betas size mismatch");
  if (points.size() < 2) throw InvalidParameter("curve: needs at least 2 points");
  for (std::size_t k = 1; k < betas.size(); ++k) {
    const double step = betas[k] - betas[k - 1];
    if (leg == Leg::forward ? step < -kGridTolerance : step > kGridTolerance) {
      throw InvalidParameter("curve: betas are not monotone within the " +
                             std::string(to_string(leg)) + " leg");
    }
  }
}

LegRanges split_legs(const std::vector<TrajectoryRecord>& records) {
  const std::size_t n = records.size();
  if (n == 0) throw InvalidParameter("no trajectory records");
  const auto [lo, hi] = std::minmax_element(
      records.begin(), records.end(),
      [](const TrajectoryRecord& a, const TrajectoryRecord& b) { return a.beta_set < b.beta_set; });
  if (lo->beta_set == hi->beta_set) return {{0, n / 2}, {n / 2, n}};
  const std::size_t peak = static_cast<std::size_t>(hi - records.begin());
  return {{0, peak + 1}, {peak + 1, n}};
}

FisherCurve build_fisher_curve(const std::vector<TrajectoryRecord>& records,
                               FisherComponent component, Leg leg) {
  const LegRanges legs = split_legs(records);
  const auto [first, last] = leg == Leg::forward ? legs.forward : legs.backward;
  if (first == last) {
    throw InvalidParameter("the " + std::string(to_string(leg)) + " leg has no records");
  }
  FisherCurve curve;
  curve.component = component;
  curve.leg = leg;
  for (std::size_t k = first; k < last; ++k) {
    const TrajectoryRecord& r = records[k];
    if (r.degenerate) continue;
    curve.points.push_back({r.g1.component(component), r.g2.component(component), r.entropy});
    curve.betas.push_back(r.beta_set);
  }
  curve.validate();
  return curve;
}

double hysteresis_gap(const FisherCurve& forward, const FisherCurve& backward) {
  forward.validate();
  backward.validate();
  if (forward.points.size() != backward.points.size()) {
    throw InvalidParameter("hysteresis_gap: curves have different lengths");
  }
  const std::size_t n = forward.points.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = n - 1 - k;
    if (std::abs(forward.betas[k] - backward.betas[j]) > kGridTolerance) {
      throw InvalidParameter("hysteresis_gap: beta grids do not align");
    }
    total += distance(forward.points[k], backward.points[j]);
  }
  return total / static_cast<double>(n);
}

std::pair<FisherCurve, FisherCurve> align_common_grid(const FisherCurve& forward,
                                                      const FisherCurve& backward) {
  // Walk both grids in ascending beta and keep the matched pairs.
  const FisherCurve up = forward.leg == Leg::forward ? forward : reversed(forward);
  const FisherCurve down = reversed(backward.leg == Leg::backward ? backward : reversed(backward));
  FisherCurve f = forward, b = backward;
  f.points.clear();
  f.betas.clear();
  b.points.clear();
  b.betas.clear();
  std::size_t i = 0, j = 0;
  while (i < up.betas.size() && j < down.betas.size()) {
    const double d = up.betas[i] - down.betas[j];
    if (std::abs(d) <= kGridTolerance) {
      f.points.push_back(up.points[i]);
      f.betas.push_back(up.betas[i]);
      b.points.push_back(down.points[j]);
      b.betas.push_back(down.betas[j]);
      ++i;
      ++j;
    } else if (d < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  std::reverse(b.points.begin(), b.points.end());
  std::reverse(b.betas.begin(), b.betas.end());
  f.leg = Leg::forward;
  b.leg = Leg::backward;
  return {f, b};
}

std::string export_curve(const FisherCurve& curve, CurveFormat format) {
  curve.validate();
  if (format == CurveFormat::csv) {
    std::string out = "beta,i1,i2,h\n";
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
      const CurvePoint& p = curve.points[k];
      out += format_g17(curve.betas[k]) + ',' + format_g17(p.i1) + ',' + format_g17(p.i2) + ',' +
             format_g17(p.h) + '\n';
    }
    return out;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const CurvePoint& p = curve.points[k];
    arr.push_back({{"beta", curve.betas[k]}, {"i1", p.i1}, {"i2", p.i2}, {"h", p.h}});
  }
  return arr.dump(1) + '\n';
}

std::string export_curve(const FisherCurve& curve, std::string_view format) {
  return export_curve(curve, parse_curve_format(format));
}

FisherCurve parse_curve(std::string_view data, CurveFormat format, FisherComponent component,
                        Leg leg) {
  FisherCurve curve;
  curve.component = component;
  curve.leg = leg;
  if (format == CurveFormat::csv) {
    std::istringstream in{std::string(data)};
    std::string line;
    if (!std::getline(in, line) || line != "beta,i1,i2,h") {
      throw FormatError("curve csv: unexpected header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      double v[4];
      std::string tok;
      for (double& x : v) {
        if (!std::getline(row, tok, ',')) throw FormatError("curve csv: short row '" + line + "'");
        try {
          std::size_t used = 0;
          x = std::stod(tok, &used);
          if (used != tok.size()) throw FormatError("curve csv: bad number '" + tok + "'");
        } catch (const std::logic_error&) {
          throw FormatError("curve csv: bad number '" + tok + "'");
        }
      }
      if (std::getline(row, tok, ',')) throw FormatError("curve csv: long row '" + line + "'");
      curve.betas.push_back(v[0]);
      curve.points.push_back({v[1], v[2], v[3]});
    }
    return curve;
  }
  try {
    const nlohmann::json arr = nlohmann::json::parse(data);
    if (!arr.is_array()) throw FormatError("curve json: expected an array");
    for (const auto& item : arr) {
      curve.betas.push_back(item.at("beta").get<double>());
      curve.points.push_back(
          {item.at("i1").get<double>(), item.at("i2").get<double>(), item.at("h").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("curve json: ") + e.what());
  }
  return curve;
}

}  // namespace gmrfig
