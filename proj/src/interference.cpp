#include "d2dcache/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "d2dcache/geometry.hpp"

namespace d2dcache {
namespace {

constexpr double kPi = std::numbers::pi;

double pow_alpha(double r, double alpha) {
  if (alpha == 4.0) {
    const double r2 = r * r;
    return r2 * r2;
  }
  return std::pow(r, alpha);
}

void check_common(double s, double q, double lambda, double alpha, const char* who) {
  if (!(s >= 0.0)) throw std::invalid_argument(std::string(who) + ": requires s >= 0");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument(std::string(who) + ": q outside [0, 1]");
  if (!(lambda >= 0.0)) throw std::invalid_argument(std::string(who) + ": negative intensity");
  if (!(alpha > 2.0)) throw std::invalid_argument(std::string(who) + ": requires alpha > 2");
}

double require_converged(const QuadratureResult& res, const char* context) {
  if (!res.converged)
    throw NumericError(std::string("quadrature did not converge in ") + context);
  return res.value;
}

// Tangency radii of C1 as seen from location 2, kept as interior breakpoints
// of [lo, inf) when applicable: the chord half-angle has kinks there.
std::vector<double> tangency_breakpoints(double r1, double v, double lo) {
  std::vector<double> pts;
  if (v > 0.0 && r1 > 0.0) {
    const double inner = std::abs(v - r1);
    const double outer = v + r1;
    if (inner > lo) pts.push_back(inner);
    if (outer > lo && outer != inner) pts.push_back(outer);
  }
  return pts;
}

}  // namespace

double laplace_i1(double s, double r1, double theta, double v, double q, double alpha) {
  check_common(s, q, 1.0, alpha, "laplace_i1");
  if (q == 0.0 || s == 0.0) return 1.0;
  // law of cosines; clamp against rounding when theta ~ 0 and r1 ~ v
  const double d2 = std::max(0.0, r1 * r1 + v * v - 2.0 * r1 * v * std::cos(theta));
  if (d2 == 0.0) return 1.0 - q;  // interferer at the receiver: active term vanishes
  const double att = (alpha == 4.0) ? 1.0 / (d2 * d2) : std::pow(d2, -0.5 * alpha);
  return 1.0 - q + q / (1.0 + s * att);
}

double laplace_i1_angle_avg(double s, double r1, double v, double q, double alpha,
                            const QuadratureSpec& spec) {
  if (q == 0.0 || s == 0.0 || v == 0.0 || r1 == 0.0)
    return laplace_i1(s, r1, 0.0, v, q, alpha);  // integrand constant in theta
  auto f = [&](double theta) { return laplace_i1(s, r1, theta, v, q, alpha); };
  const QuadratureResult res = integrate_finite(f, 0.0, kPi, spec);
  return require_converged(res, "laplace_i1_angle_avg") / kPi;
}

double laplace_i2(double s, double r1, double v, double q, double lambda_b, double alpha,
                  const QuadratureSpec& spec) {
  check_common(s, q, lambda_b, alpha, "laplace_i2");
  if (!(r1 >= 0.0) || !(v >= 0.0))
    throw std::invalid_argument("laplace_i2: requires r1 >= 0 and v >= 0");
  if (q == 0.0 || s == 0.0 || lambda_b == 0.0) return 1.0;

  const double z1 = std::max(0.0, r1 - v);
  auto kernel = [s, alpha](double r) { return r / (1.0 + pow_alpha(r, alpha) / s); };

  QuadratureSpec ext_spec = spec;
  ext_spec.breakpoints = tangency_breakpoints(r1, v, z1);
  auto ext = [&](double r) { return kPi * kernel(r); };
  const double i_ext = require_converged(integrate_semi_infinite(ext, z1, ext_spec),
                                         "laplace_i2 exterior integral");

  double i_lune = 0.0;
  if (v > 0.0 && r1 > 0.0) {
    auto lune = [&](double r) { return chord_half_angle(r, r1, v) * kernel(r); };
    i_lune = require_converged(
        integrate_finite(lune, std::abs(v - r1), v + r1, spec), "laplace_i2 lune integral");
  }

  const double exponent = std::min(0.0, -2.0 * lambda_b * q * (i_ext - i_lune));
  return std::exp(exponent);
}

double laplace_i3(double s, double r1, double r2, double v, double q, double lambda_a,
                  double alpha, const QuadratureSpec& spec) {
  check_common(s, q, lambda_a, alpha, "laplace_i3");
  if (!(r2 >= std::max(0.0, r1 - v)))
    throw std::domain_error("laplace_i3: r2 below the support max(0, r1 - v)");
  if (q == 0.0 || s == 0.0 || lambda_a == 0.0) return 1.0;

  auto kernel = [s, alpha](double r) { return r / (1.0 + pow_alpha(r, alpha) / s); };

  QuadratureSpec ext_spec = spec;
  ext_spec.breakpoints = tangency_breakpoints(r1, v, r2);
  auto ext = [&](double r) { return 2.0 * kPi * kernel(r); };
  const double i_ext = require_converged(integrate_semi_infinite(ext, r2, ext_spec),
                                         "laplace_i3 exterior integral");

  double b = 0.0;
  if (v > 0.0 && r1 > 0.0) {
    auto half_lune = [&](double r) { return 2.0 * chord_half_angle(r, r1, v) * kernel(r); };
    switch (classify({r1, r2, v})) {
      case GeometryCase::disjoint:  // C1 \ C2 is all of C1
        b = require_converged(
            integrate_finite(half_lune, std::max(0.0, v - r1), v + r1, spec),
            "laplace_i3 exclusion integral");
        break;
      case GeometryCase::intersecting:  // the part of C1 beyond radius r2
        b = require_converged(integrate_finite(half_lune, r2, v + r1, spec),
                              "laplace_i3 exclusion integral");
        break;
      case GeometryCase::engulfed:  // C1 \ C2 is empty
        break;
    }
  }

  const double exponent = std::min(0.0, -lambda_a * q * (i_ext - b));
  return std::exp(exponent);
}

double laplace_i3_disc_only(double s, double r2, double q, double lambda_a, double alpha,
                            const QuadratureSpec& spec) {
  check_common(s, q, lambda_a, alpha, "laplace_i3_disc_only");
  if (!(r2 >= 0.0)) throw std::invalid_argument("laplace_i3_disc_only: requires r2 >= 0");
  if (q == 0.0 || s == 0.0 || lambda_a == 0.0) return 1.0;
  auto ext = [s, alpha](double r) { return 2.0 * kPi * r / (1.0 + pow_alpha(r, alpha) / s); };
  const double i_ext = require_converged(integrate_semi_infinite(ext, r2, spec),
                                         "laplace_i3_disc_only exterior integral");
  return std::exp(std::min(0.0, -lambda_a * q * i_ext));
}

double rho1(double t, double alpha, const QuadratureSpec& spec) {
  if (!(t > 0.0)) throw std::invalid_argument("rho1: requires t > 0");
  if (!(alpha > 2.0)) throw std::invalid_argument("rho1: requires alpha > 2");
  auto f = [alpha](double u) { return 1.0 / (1.0 + std::pow(u, 0.5 * alpha)); };
  const double cut = std::pow(t, -2.0 / alpha);
  const double val =
      require_converged(integrate_semi_infinite(f, cut, spec), "rho1 tail integral");
  return std::pow(t, 2.0 / alpha) * val;
}

double rho2(double t, double alpha, const QuadratureSpec& spec) {
  if (!(t > 0.0)) throw std::invalid_argument("rho2: requires t > 0");
  if (!(alpha > 2.0)) throw std::invalid_argument("rho2: requires alpha > 2");
  auto f = [alpha](double u) { return 1.0 / (1.0 + std::pow(u, 0.5 * alpha)); };
  const double cut = std::pow(t, -2.0 / alpha);
  const double val = require_converged(integrate_finite(f, 0.0, cut, spec), "rho2 integral");
  return std::pow(t, 2.0 / alpha) * val;
}

}  // namespace d2dcache
