#pragma once

#include <vector>

#include "d2dcache/quadrature.hpp"
#include "d2dcache/types.hpp"

namespace d2dcache {

/// Tolerance budget for the nested evaluation. Tolerances tighten inward so
/// inner noise is not amplified by the outer adaptivity.
struct CoverageTolerances {
  QuadratureSpec outer{1e-5, 0.0, 200};     ///< r1 integral
  QuadratureSpec middle{1e-7, 0.0, 400};    ///< r2 integral
  QuadratureSpec theta{1e-9, 1e-9, 100};    ///< angle average of the singleton transform
  QuadratureSpec laplace{1e-8, 1e-8, 200};  ///< integrals inside the Laplace transforms
  /// The r1 integration is truncated where the remaining nearest-device
  /// probability mass drops below this.
  double r1_tail_mass = 1e-10;
};

struct SubcaseResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Conditional coverage probability of obtaining file 2 for one subcase:
/// the (r1, r2, theta) integral of the three Laplace transforms at
/// s = T r2^alpha against f_R1, f_{R2|R1} and the uniform angle density.
/// lambda_file2 is the intensity of the population serving file 2 (also the
/// I3 interferer population); lambda_file1 is the intensity of the file-1
/// population (the I2 interferers). Swapping the two intensities yields the
/// other subcase.
SubcaseResult coverage_file2_subcase(const NetworkParams& params, const MobilityQuery& query,
                                     double lambda_file2, double lambda_file1,
                                     const CoverageTolerances& tol = {});

/// Total coverage probability of file 2: the subcase mixture
/// p_a * P(X) + p_b * P(Y). For p_a in {0, 1} one file-2 population is
/// empty; the estimate is 0 and carries the degenerate marker.
CoverageEstimate coverage_file2_total(const NetworkParams& params, const MobilityQuery& query,
                                      const CoverageTolerances& tol = {});

/// Large-displacement limit: p_a Pc(p_b) + p_b Pc(p_a) with
/// Pc(p) = p / (p + q (rho1 + (1 - p) rho2)).
double coverage_file2_asymptotic(const NetworkParams& params, double t);

enum class SweepAxis { v, t };

/// One analytic estimate per grid point, evaluated concurrently and returned
/// in grid order. A point that fails numerically yields a NaN-valued,
/// unconverged estimate; the sweep continues.
std::vector<CoverageEstimate> sweep(const NetworkParams& params, SweepAxis axis,
                                    const std::vector<double>& grid, double fixed,
                                    unsigned workers = 0, const CoverageTolerances& tol = {});

}  // namespace d2dcache
