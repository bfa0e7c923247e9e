#pragma once

#include "d2dcache/types.hpp"

namespace d2dcache {

/// Nearest-device distance density at location 1 for the full process:
/// 2 pi lambda r1 exp(-lambda pi r1^2).
double pdf_r1(double r1, const NetworkParams& params);

/// P(R2 > r2 | R1 = r1) = exp(-lambda2 |A|) where |A| is the area of
/// C2 \ C1 and lambda2 the intensity of the file-2 population.
double ccdf_r2_given_r1(double r2, double r1, double v, double lambda2);

/// Conditional serving-distance density at location 2:
/// lambda2 * d|A|/dr2 * exp(-lambda2 |A|) on r2 >= max(0, r1 - v).
double pdf_r2_given_r1(double r2, double r1, double v, double lambda2);

}  // namespace d2dcache
