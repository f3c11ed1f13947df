#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmrfig/infogeo.hpp"
#include "gmrfig/sampler.hpp"

namespace gmrfig {

enum class Leg { forward, backward };
enum class CurveFormat { csv, json };

std::string_view to_string(Leg leg);
std::string_view to_string(CurveFormat format);
/// Throws InvalidParameter for anything but "csv" / "json".
CurveFormat parse_curve_format(std::string_view name);

/// (I1, I2, H) for one record.
struct CurvePoint {
  double i1 = 0.0;
  double i2 = 0.0;
  double h = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct FisherCurve {
  std::vector<CurvePoint> points;
  std::vector<double> betas;  ///< parallel to points
  FisherComponent component = FisherComponent::bb;
  Leg leg = Leg::forward;

  /// Throws InvalidParameter unless sizes match, there are >= 2 points and
  /// betas are monotone in the leg's direction.
  void validate() const;
};

/// Half-open record ranges [first, second) for the two legs. The forward leg
/// ends at the first maximum of beta_set; a constant-beta run splits in halves.
struct LegRanges {
  std::pair<std::size_t, std::size_t> forward;
  std::pair<std::size_t, std::size_t> backward;
};
LegRanges split_legs(const std::vector<TrajectoryRecord>& records);

/// One point per non-degenerate record of the requested leg.
FisherCurve build_fisher_curve(const std::vector<TrajectoryRecord>& records,
                               FisherComponent component, Leg leg);

/// Mean Euclidean distance between the forward curve and the reversed backward
/// curve. Both must sit on the same beta grid (to 1e-9), else InvalidParameter.
double hysteresis_gap(const FisherCurve& forward, const FisherCurve& backward);

/// Restricts both curves to the beta values they share, keeping leg order.
std::pair<FisherCurve, FisherCurve> align_common_grid(const FisherCurve& forward,
                                                      const FisherCurve& backward);

/// csv: header `beta,i1,i2,h` and 17-digit rows. json: array of
/// {beta, i1, i2, h} objects.
std::string export_curve(const FisherCurve& curve, CurveFormat format);
std::string export_curve(const FisherCurve& curve, std::string_view format);

/// Inverse of export_curve. Throws FormatError on malformed input.
FisherCurve parse_curve(std::string_view data, CurveFormat format, FisherComponent component,
                        Leg leg);

}  // namespace gmrfig
