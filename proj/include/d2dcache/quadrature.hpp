#pragma once

#include <functional>
#include <vector>

#include "d2dcache/types.hpp"

namespace d2dcache {

/// Controls for the adaptive Gauss-Kronrod integrator.
struct QuadratureSpec {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int max_subdivisions = 200;
  /// Interior points where the integrand is non-smooth; the interval is
  /// pre-split here before any adaptive refinement. Must be strictly
  /// increasing and strictly inside the integration interval.
  std::vector<double> breakpoints{};
  /// Running total beyond this magnitude is treated as divergence.
  double divergence_cap = 1e15;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

class DivergenceError : public NumericError {
 public:
  explicit DivergenceError(const std::string& what) : NumericError(what) {}
};

using Integrand = std::function<double(double)>;

/// Adaptive 15-point Kronrod / 7-point Gauss quadrature on [a, b].
/// Endpoints are never evaluated, so integrable endpoint singularities are
/// tolerated. Non-convergence within the subdivision budget is reported via
/// the converged flag, not an exception.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureSpec& spec = {});

/// Integrates f over [a, infinity) through the substitution
/// r = a + t / (1 - t), then delegates to integrate_finite on t in [0, 1].
/// Breakpoints are given in r-space. Requires decay faster than 1/r; a
/// running total past spec.divergence_cap raises DivergenceError.
QuadratureResult integrate_semi_infinite(const Integrand& f, double a,
                                         const QuadratureSpec& spec = {});

}  // namespace d2dcache
