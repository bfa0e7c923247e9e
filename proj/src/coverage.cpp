#include "d2dcache/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "d2dcache/distributions.hpp"
#include "d2dcache/interference.hpp"
#include "parallel_for.hpp"

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

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

SubcaseResult coverage_file2_subcase(const NetworkParams& params, const MobilityQuery& query,
                                     double lambda_file2, double lambda_file1,
                                     const CoverageTolerances& tol) {
  params.validate();
  query.validate();
  if (!(lambda_file2 >= 0.0) || !(lambda_file1 >= 0.0))
    throw std::invalid_argument("coverage_file2_subcase: negative population intensity");
  if (lambda_file2 == 0.0) return {0.0, 0.0, true};  // no device ever serves file 2

  const double v = query.v;
  const double t_lin = query.t;
  const double q = params.q;
  const double alpha = params.alpha;

  const double r1_max = std::sqrt(-std::log(tol.r1_tail_mass) / (params.lambda * kPi));
  bool inner_converged = true;

  auto integrand_r1 = [&](double r1) -> double {
    const double z1 = std::max(0.0, r1 - v);

    auto integrand_r2 = [&](double r2) -> double {
      const double pdf2 = pdf_r2_given_r1(r2, r1, v, lambda_file2);
      if (pdf2 <= 0.0) return 0.0;
      const double s = t_lin * pow_alpha(r2, alpha);
      const double li2 = laplace_i2(s, r1, v, q, lambda_file1, alpha, tol.laplace);
      const double li3 = laplace_i3(s, r1, r2, v, q, lambda_file2, alpha, tol.laplace);
      const double li1 = laplace_i1_angle_avg(s, r1, v, q, alpha, tol.theta);
      return pdf2 * li2 * li3 * li1;
    };

    QuadratureSpec mid_spec = tol.middle;
    if (v > 0.0 && r1 > 0.0) {
      const double inner = std::abs(v - r1);
      const double outer = v + r1;
      if (inner > z1) mid_spec.breakpoints.push_back(inner);
      if (outer > z1 && outer != inner) mid_spec.breakpoints.push_back(outer);
    }
    const QuadratureResult mid = integrate_semi_infinite(integrand_r2, z1, mid_spec);
    if (!mid.converged) inner_converged = false;
    return pdf_r1(r1, params) * mid.value;
  };

  const QuadratureResult outer = integrate_finite(integrand_r1, 0.0, r1_max, tol.outer);

  SubcaseResult res;
  res.value = clamp_probability(outer.value);
  res.error = outer.error_estimate + tol.r1_tail_mass;
  res.converged = outer.converged && inner_converged;
  return res;
}

CoverageEstimate coverage_file2_total(const NetworkParams& params, const MobilityQuery& query,
                                      const CoverageTolerances& tol) {
  params.validate();
  query.validate();

  CoverageEstimate est;
  est.method = Method::analytic;
  est.params = params;
  est.query = query;

  const double pa = params.p_a;
  const double pb = params.p_b();
  if (pa == 0.0 || pa == 1.0) {
    // One portion is never cached, so file 2 cannot be obtained.
    est.degenerate = true;
    return est;
  }

  // Subcase Y: file B is file 1, file 2 is served by the A population.
  const SubcaseResult py =
      coverage_file2_subcase(params, query, pa * params.lambda, pb * params.lambda, tol);
  // Subcase X: the two population intensities swap roles.
  const SubcaseResult px =
      coverage_file2_subcase(params, query, pb * params.lambda, pa * params.lambda, tol);

  est.value = clamp_probability(pa * px.value + pb * py.value);
  est.error = pa * px.error + pb * py.error;
  est.converged = px.converged && py.converged;
  est.ci_low = clamp_probability(est.value - est.error);
  est.ci_high = clamp_probability(est.value + est.error);
  return est;
}

double coverage_file2_asymptotic(const NetworkParams& params, double t) {
  params.validate();
  if (!(t > 0.0)) throw std::invalid_argument("coverage_file2_asymptotic: requires t > 0");

  const double pa = params.p_a;
  const double pb = params.p_b();
  if (pa == 0.0 || pa == 1.0) return 0.0;

  const double p1 = rho1(t, params.alpha);
  const double p2 = rho2(t, params.alpha);
  auto pc = [&](double p) {
    if (p == 0.0) return 0.0;
    return p / (p + params.q * (p1 + (1.0 - p) * p2));
  };
  return pa * pc(pb) + pb * pc(pa);
}

std::vector<CoverageEstimate> sweep(const NetworkParams& params, SweepAxis axis,
                                    const std::vector<double>& grid, double fixed,
                                    unsigned workers, const CoverageTolerances& tol) {
  params.validate();
  if (grid.empty()) throw std::invalid_argument("sweep: grid must be non-empty");

  std::vector<CoverageEstimate> out(grid.size());
  detail::parallel_for(grid.size(), workers, [&](std::size_t i) {
    MobilityQuery query;
    if (axis == SweepAxis::v) {
      query.v = grid[i];
      query.t = fixed;
    } else {
      query.v = fixed;
      query.t = grid[i];
    }
    try {
      out[i] = coverage_file2_total(params, query, tol);
    } catch (const std::exception&) {
      CoverageEstimate failed;
      failed.method = Method::analytic;
      failed.params = params;
      failed.query = query;
      failed.value = std::numeric_limits<double>::quiet_NaN();
      failed.converged = false;
      out[i] = failed;
    }
  });
  return out;
}

}  // namespace d2dcache
