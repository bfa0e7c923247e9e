#pragma once

#include "d2dcache/quadrature.hpp"
#include "d2dcache/types.hpp"

namespace d2dcache {

/// Arguments for one conditional Laplace-transform evaluation. The Laplace
/// argument is always the combined s = T r2^alpha, never a (T, r2) pair.
struct LaplaceQuery {
  double s = 0.0;      ///< Laplace argument, >= 0
  double r1 = 0.0;     ///< serving distance at location 1
  double r2 = 0.0;     ///< serving distance at location 2
  double v = 0.0;      ///< displacement
  double theta = 0.0;  ///< angle of the location-1 server, in [0, pi]
  NetworkParams params{};
};

/// Laplace transform of the interference from the location-1 server, a
/// singleton at distance r12 with r12^2 = r1^2 + v^2 - 2 r1 v cos(theta):
/// 1 - q + q / (1 + s r12^-alpha). Returns 1 - q at r12 = 0 with s > 0.
double laplace_i1(double s, double r1, double theta, double v, double q, double alpha);

/// (1/pi) * integral of laplace_i1 over theta in [0, pi].
double laplace_i1_angle_avg(double s, double r1, double v, double q, double alpha,
                            const QuadratureSpec& spec = {1e-9, 1e-9, 100});

/// Laplace transform of the interference from the file-1 population of
/// intensity lambda_b outside the exclusion zone C1 (minus the singleton):
/// exp(-2 q lambda_b (int_{z1}^inf pi r dr / (1 + r^alpha/s)
///                    - int_{|v-r1|}^{v+r1} f(r, r1) r dr / (1 + r^alpha/s)))
/// with z1 = max(0, r1 - v) and f the chord half-angle.
double laplace_i2(double s, double r1, double v, double q, double lambda_b, double alpha,
                  const QuadratureSpec& spec = {});

/// Laplace transform of the interference from the file-2 population of
/// intensity lambda_a outside C1 (union) C2: the symmetric exclusion of the
/// disc of radius r2 times exp(+q lambda_a B(r1, r2, v)) for the extra area
/// of C1 \ C2, where B depends on the geometry case (zero when engulfed).
double laplace_i3(double s, double r1, double r2, double v, double q, double lambda_a,
                  double alpha, const QuadratureSpec& spec = {});

/// laplace_i3 with the C1 \ C2 correction forced to zero, i.e. exclusion of
/// the disc of radius r2 only. This is the v -> infinity form.
double laplace_i3_disc_only(double s, double r2, double q, double lambda_a, double alpha,
                            const QuadratureSpec& spec = {});

/// Asymptotic helper integrals:
/// rho1 = T^{2/alpha} int_{T^{-2/alpha}}^inf du / (1 + u^{alpha/2}),
/// rho2 = T^{2/alpha} int_0^{T^{-2/alpha}} du / (1 + u^{alpha/2}).
double rho1(double t, double alpha, const QuadratureSpec& spec = {});
double rho2(double t, double alpha, const QuadratureSpec& spec = {});

}  // namespace d2dcache
