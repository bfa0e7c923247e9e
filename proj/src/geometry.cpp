#include "d2dcache/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace d2dcache {
namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

double support_lower(const CirclePair& cp) { return std::max(0.0, cp.r1 - cp.v); }

}  // namespace

GeometryCase classify(const CirclePair& cp) {
  cp.validate();
  if (cp.v <= cp.r2 - cp.r1) return GeometryCase::engulfed;
  if (cp.v >= cp.r1 + cp.r2) return GeometryCase::disjoint;
  return GeometryCase::intersecting;
}

double lune_area(const CirclePair& cp) {
  if (classify(cp) != GeometryCase::intersecting)
    throw std::domain_error("lune_area: circles are not intersecting");
  const double r1 = cp.r1, r2 = cp.r2, v = cp.v;
  if (v == 0.0) return 0.0;  // concentric with r2 < r1: C2 entirely inside C1

  const double cross = ((r1 + v) * (r1 + v) - r2 * r2) * (r2 * r2 - (r1 - v) * (r1 - v));
  const double a1 = clamp_unit((r1 * r1 + v * v - r2 * r2) / (2.0 * v * r1));
  const double a2 = clamp_unit((r2 * r2 + v * v - r1 * r1) / (2.0 * v * r2));
  const double area = kPi * r2 * r2 + 0.5 * std::sqrt(std::max(cross, 0.0)) -
                      r1 * r1 * std::acos(a1) - r2 * r2 * std::acos(a2);
  return std::clamp(area, 0.0, kPi * r2 * r2);
}

double region_area_A(const CirclePair& cp) {
  cp.validate();
  if (cp.r2 < support_lower(cp))
    throw std::domain_error("region_area_A: r2 below the support max(0, r1 - v)");
  switch (classify(cp)) {
    case GeometryCase::disjoint:
      return kPi * cp.r2 * cp.r2;
    case GeometryCase::engulfed:
      return kPi * (cp.r2 * cp.r2 - cp.r1 * cp.r1);
    case GeometryCase::intersecting:
      return lune_area(cp);
  }
  return 0.0;
}

double region_area_A_deriv(const CirclePair& cp) {
  cp.validate();
  if (cp.r2 < support_lower(cp))
    throw std::domain_error("region_area_A_deriv: r2 below the support max(0, r1 - v)");
  const double r1 = cp.r1, r2 = cp.r2, v = cp.v;
  // Strict inequalities: at exact branch points fall through to the lune
  // expression, which coincides with both neighbours there.
  if (v == 0.0 || v > r1 + r2 || v < r2 - r1) return 2.0 * kPi * r2;
  if (r2 == 0.0) return 0.0;
  const double a2 = clamp_unit((r2 * r2 + v * v - r1 * r1) / (2.0 * v * r2));
  return 2.0 * r2 * (kPi - std::acos(a2));
}

double chord_half_angle(double r, double r1, double v) {
  if (!(v > 0.0)) throw std::domain_error("chord_half_angle: requires v > 0");
  if (!(r > 0.0)) throw std::domain_error("chord_half_angle: requires r > 0");
  return std::acos(clamp_unit((r * r + v * v - r1 * r1) / (2.0 * r * v)));
}

}  // namespace d2dcache
