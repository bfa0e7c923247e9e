#pragma once

#include "d2dcache/types.hpp"

namespace d2dcache {

/// Two circles: C1 of radius r1 centered at location 1, C2 of radius r2
/// centered at location 2, centers separated by the displacement v.
struct CirclePair {
  double r1 = 0.0;
  double r2 = 0.0;
  double v = 0.0;

  void validate() const {
    if (!(r1 >= 0.0) || !(r2 >= 0.0) || !(v >= 0.0) || !std::isfinite(r1) ||
        !std::isfinite(r2) || !std::isfinite(v))
      throw std::invalid_argument("CirclePair: radii and separation must be finite and >= 0");
  }
};

enum class GeometryCase {
  disjoint,      ///< v >= r1 + r2
  intersecting,  ///< r2 - r1 < v < r1 + r2
  engulfed,      ///< v <= r2 - r1 (C1 inside C2)
};

inline const char* geometry_case_name(GeometryCase c) {
  switch (c) {
    case GeometryCase::disjoint: return "disjoint";
    case GeometryCase::intersecting: return "intersecting";
    case GeometryCase::engulfed: return "engulfed";
  }
  return "unknown";
}

/// Closed boundary conditions win at equalities; when both closed conditions
/// hold at once (only r1 = 0, v = r2) the pair is classified engulfed.
GeometryCase classify(const CirclePair& cp);

/// Area of C2 \ C1 for partially overlapping circles. Valid only in the
/// intersecting case; arccos arguments are clamped against rounding and the
/// result is clamped into [0, pi r2^2].
double lune_area(const CirclePair& cp);

/// Area |A| of C2 \ C1 on the support r2 >= max(0, r1 - v): the full disc
/// when the circles are disjoint, the lune when they intersect, the annulus
/// when C1 is engulfed. Continuous in r2 across the branch points.
double region_area_A(const CirclePair& cp);

/// d|A|/dr2. At exact branch points the lune-branch expression is used (the
/// branches agree there anyway).
double region_area_A_deriv(const CirclePair& cp);

/// Half-angle subtended at location 2 by the arc of radius r lying inside
/// C1: arccos((r^2 + v^2 - r1^2) / (2 r v)), clamped so radii beyond the
/// tangency range map to exactly 0 or pi. Requires r > 0 and v > 0.
double chord_half_angle(double r, double r1, double v);

}  // namespace d2dcache
