#include "d2dcache/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "d2dcache/coverage.hpp"
#include "d2dcache/distributions.hpp"
#include "d2dcache/geometry.hpp"
#include "d2dcache/interference.hpp"
#include "d2dcache/philox.hpp"
#include "d2dcache/quadrature.hpp"
#include "d2dcache/results_io.hpp"
#include "d2dcache/simulator.hpp"

namespace d2dcache {
namespace {

constexpr double kPi = std::numbers::pi;

NetworkParams fig2_params() { return {1.0, 0.5, 0.5, 4.0}; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Direct implementation of the static (v = 0) formulas: annulus area,
// r12 = r1, no C1 \ C2 correction. Assembled independently of the geometry
// case machinery so it can cross-check the general path.
double static_coverage_direct(const NetworkParams& params, double t_lin,
                              const CoverageTolerances& tol) {
  const double lam = params.lambda;
  const double q = params.q;
  const double alpha = params.alpha;
  const double r1_max = std::sqrt(-std::log(tol.r1_tail_mass) / (lam * kPi));

  auto subcase = [&](double lam2, double lam_b) {
    auto outer = [&](double r1) {
      auto inner = [&](double r2) {
        const double pdf2 =
            lam2 * 2.0 * kPi * r2 * std::exp(-lam2 * kPi * (r2 * r2 - r1 * r1));
        if (pdf2 <= 0.0) return 0.0;
        const double s = t_lin * std::pow(r2, alpha);
        const double li1 = 1.0 - q + q / (1.0 + s * std::pow(r1, -alpha));
        auto kernel = [&](double r) { return r / (1.0 + std::pow(r, alpha) / s); };
        const double ext_b =
            integrate_semi_infinite([&](double r) { return kernel(r); }, r1, tol.laplace).value;
        const double ext_a =
            integrate_semi_infinite([&](double r) { return kernel(r); }, r2, tol.laplace).value;
        const double li2 = std::exp(-2.0 * kPi * lam_b * q * ext_b);
        const double li3 = std::exp(-2.0 * kPi * lam2 * q * ext_a);
        return pdf2 * li1 * li2 * li3;
      };
      const double mid = integrate_semi_infinite(inner, r1, tol.middle).value;
      return 2.0 * kPi * lam * r1 * std::exp(-lam * kPi * r1 * r1) * mid;
    };
    return integrate_finite(outer, 0.0, r1_max, tol.outer).value;
  };

  const double pa = params.p_a, pb = params.p_b();
  const double py = subcase(pa * lam, pb * lam);
  const double px = subcase(pb * lam, pa * lam);
  return pa * px + pb * py;
}

// Uniform helpers for randomized checks, all driven by Philox substreams so
// reruns see identical draws.
double uniform_in(TrialRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform();
}

CheckResult check_analytic_vs_montecarlo(const ValidationOptions& opts) {
  CheckResult res{"1", "analytic vs Monte Carlo agreement", true, ""};
  const NetworkParams params = fig2_params();
  const std::uint64_t trials = opts.quick ? opts.mc_trials / 10 : opts.mc_trials;
  std::ostringstream detail;

  for (double v : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const MobilityQuery query{v, 1.0};
    const CoverageEstimate analytic = coverage_file2_total(params, query);
    SimulationConfig cfg;
    cfg.n_trials = trials;
    cfg.seed = opts.seed;
    cfg.threads = opts.workers;
    const CoverageEstimate mc = estimate_coverage(params, query, cfg);

    const bool inside = analytic.value >= mc.ci_low && analytic.value <= mc.ci_high;
    const bool width_ok = opts.quick || mc.error <= 0.005;
    if (!inside || !width_ok) res.pass = false;
    detail << "v=" << v << ": analytic=" << fmt(analytic.value) << " mc=" << fmt(mc.value)
           << "+-" << fmt(mc.error) << (inside ? "" : " OUTSIDE-CI")
           << (width_ok ? "" : " CI-TOO-WIDE") << "; ";
  }
  res.detail = detail.str();
  return res;
}

CheckResult check_asymptotic_closed_form(const ValidationOptions&) {
  CheckResult res{"2", "asymptotic closed form", true, ""};
  const NetworkParams params = fig2_params();
  const double t = 1.0;

  const double asym = coverage_file2_asymptotic(params, t);
  // Independent oracle at alpha = 4: rho1 = sqrt(T) atan(sqrt(T)),
  // rho2 = sqrt(T) atan(1/sqrt(T)).
  const double o1 = std::sqrt(t) * std::atan(std::sqrt(t));
  const double o2 = std::sqrt(t) * std::atan(1.0 / std::sqrt(t));
  auto pc = [&](double p) { return p / (p + params.q * (o1 + (1.0 - p) * o2)); };
  const double oracle = params.p_a * pc(params.p_b()) + params.p_b() * pc(params.p_a);

  const CoverageEstimate far_field = coverage_file2_total(params, {1000.0, t});
  const double d_named = std::abs(asym - 0.45911);
  const double d_oracle = std::abs(asym - oracle);
  const double d_far = std::abs(far_field.value - asym);

  res.pass = d_named <= 1e-4 && d_oracle <= 1e-9 && d_far <= 1e-2;
  res.detail = "asym=" + fmt(asym) + " |asym-0.45911|=" + fmt(d_named) +
               " |asym-oracle|=" + fmt(d_oracle) + " |P(v=1e3)-asym|=" + fmt(d_far);
  return res;
}

CheckResult check_mobility_monotonicity(const ValidationOptions& opts) {
  CheckResult res{"3", "mobility monotonicity", true, ""};
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  const std::vector<CoverageEstimate> estimates =
      sweep(fig2_params(), SweepAxis::v, grid, 1.0, opts.workers);

  std::ostringstream detail;
  for (std::size_t i = 0; i + 1 < estimates.size(); ++i) {
    const double allowance = 2.0 * (estimates[i].error + estimates[i + 1].error);
    if (estimates[i + 1].value < estimates[i].value - allowance) {
      res.pass = false;
      detail << "violation at v=" << grid[i + 1] << "; ";
    }
  }
  for (const CoverageEstimate& e : estimates) detail << fmt(e.value) << " ";
  res.detail = detail.str();
  return res;
}

CheckResult check_threshold_monotonicity(const ValidationOptions& opts) {
  CheckResult res{"4", "threshold monotonicity", true, ""};
  std::ostringstream detail;
  for (double v : {0.0, 1.0}) {
    std::vector<double> t_grid;
    for (double db : {-10.0, -5.0, 0.0, 5.0, 10.0}) t_grid.push_back(db_to_linear(db));
    const std::vector<CoverageEstimate> estimates =
        sweep(fig2_params(), SweepAxis::t, t_grid, v, opts.workers);
    detail << "v=" << v << ":";
    for (const CoverageEstimate& e : estimates) detail << " " << fmt(e.value);
    detail << "; ";
    for (std::size_t i = 0; i + 1 < estimates.size(); ++i)
      if (!(estimates[i + 1].value < estimates[i].value)) res.pass = false;
  }
  res.detail = detail.str();
  return res;
}

CheckResult check_distribution_normalization(const ValidationOptions& opts) {
  CheckResult res{"5", "conditional distance distribution", true, ""};
  TrialRng rng(opts.seed, 5);
  double worst_norm = 0.0;

  const int triples = opts.quick ? 50 : 200;
  for (int i = 0; i < triples; ++i) {
    const double r1 = uniform_in(rng, 0.05, 2.0);
    const double v = i % 10 == 0 ? 0.0 : uniform_in(rng, 0.0, 3.0);
    const double lambda2 = uniform_in(rng, 0.1, 2.0);
    const double z1 = std::max(0.0, r1 - v);

    QuadratureSpec spec{1e-9, 0.0, 400};
    if (v > 0.0) {
      const double inner = std::abs(v - r1), outer = v + r1;
      if (inner > z1) spec.breakpoints.push_back(inner);
      if (outer > z1 && outer != inner) spec.breakpoints.push_back(outer);
    }
    const QuadratureResult norm = integrate_semi_infinite(
        [&](double r2) { return pdf_r2_given_r1(r2, r1, v, lambda2); }, z1, spec);
    worst_norm = std::max(worst_norm, std::abs(norm.value - 1.0));
  }
  if (worst_norm > 1e-6) res.pass = false;

  // |A| continuity across both branch points.
  double worst_jump = 0.0;
  const int pairs = opts.quick ? 200 : 1000;
  for (int i = 0; i < pairs; ++i) {
    const double r1 = uniform_in(rng, 0.05, 2.0);
    const double v = uniform_in(rng, 0.01, 3.0);
    const double z1 = std::max(0.0, r1 - v);
    for (double b : {std::abs(v - r1), v + r1}) {
      const double h = 1e-12 * std::max(1.0, b);
      const double left = b - h >= z1 ? region_area_A({r1, b - h, v}) : region_area_A({r1, b, v});
      const double right = region_area_A({r1, b + h, v});
      worst_jump = std::max(worst_jump, std::abs(right - left));
    }
  }
  if (worst_jump > 1e-9) res.pass = false;

  // d|A|/dr2 against central finite differences away from branch points.
  double worst_rel = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const double r1 = uniform_in(rng, 0.05, 2.0);
    const double v = uniform_in(rng, 0.01, 3.0);
    const double z1 = std::max(0.0, r1 - v);
    const double inner = std::abs(v - r1), outer = v + r1;
    double r2;
    switch (i % 3) {
      case 0: r2 = uniform_in(rng, z1, inner); break;  // disc branch (empty in scenario 1)
      case 1: r2 = uniform_in(rng, inner, outer); break;
      default: r2 = uniform_in(rng, outer, outer + 2.0); break;
    }
    const double h = 1e-6 * std::max(1.0, r2);
    if (r2 - h <= z1) continue;
    const double margin = 10.0 * h;
    if (std::abs(r2 - inner) < margin || std::abs(r2 - outer) < margin) continue;
    const double fd =
        (region_area_A({r1, r2 + h, v}) - region_area_A({r1, r2 - h, v})) / (2.0 * h);
    const double an = region_area_A_deriv({r1, r2, v});
    if (an == 0.0 && fd == 0.0) continue;
    worst_rel = std::max(worst_rel, std::abs(fd - an) / std::max(std::abs(an), 1e-12));
  }
  if (worst_rel > 1e-5) res.pass = false;

  res.detail = "max |norm-1|=" + fmt(worst_norm) + " max branch jump=" + fmt(worst_jump) +
               " max FD rel err=" + fmt(worst_rel);
  return res;
}

CheckResult check_lune_oracles(const ValidationOptions& opts) {
  CheckResult res{"6", "lune area oracle", true, ""};

  // Equal-radius identity: lune = pi r^2 - (2 r^2 acos(v/2r) - (v/2) sqrt(4r^2 - v^2)).
  const double lune = lune_area({1.0, 1.0, 1.0});
  const double identity = kPi - (2.0 * std::acos(0.5) - 0.5 * std::sqrt(3.0));
  const double d_identity = std::abs(lune - identity);
  const double d_closed = std::abs(lune - (kPi / 3.0 + std::sqrt(3.0) / 2.0));
  if (d_identity > 1e-12 || d_closed > 1e-12) res.pass = false;

  // Monte Carlo point sampling on random intersecting configurations.
  TrialRng rng(opts.seed, 6);
  const std::uint64_t n_points = opts.quick ? 100000 : 1000000;
  double worst_sigmas = 0.0;
  for (int cfg = 0; cfg < 20; ++cfg) {
    double r1, r2, v;
    do {
      r1 = uniform_in(rng, 0.2, 2.0);
      r2 = uniform_in(rng, 0.2, 2.0);
      v = uniform_in(rng, 0.05, 3.5);
    } while (classify({r1, r2, v}) != GeometryCase::intersecting);

    std::uint64_t outside = 0;
    for (std::uint64_t i = 0; i < n_points; ++i) {
      const double r = r2 * std::sqrt(rng.uniform());
      const double phi = 2.0 * kPi * rng.uniform();
      const double px = r * std::cos(phi);
      const double py = r * std::sin(phi);
      const double dx = px + v;  // C1 center sits at (-v, 0)
      if (dx * dx + py * py > r1 * r1) ++outside;
    }
    const double disc = kPi * r2 * r2;
    const double p = static_cast<double>(outside) / static_cast<double>(n_points);
    const double mc = p * disc;
    const double sigma = disc * std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                                          static_cast<double>(n_points));
    const double sigmas = std::abs(mc - lune_area({r1, r2, v})) / sigma;
    worst_sigmas = std::max(worst_sigmas, sigmas);
  }
  if (worst_sigmas > 3.0) res.pass = false;

  res.detail = "|lune-identity|=" + fmt(d_identity) + " worst MC deviation=" +
               fmt(worst_sigmas) + " sigma";
  return res;
}

CheckResult check_degeneracies(const ValidationOptions& opts) {
  CheckResult res{"7", "degenerate paths (q=0 and v=0)", true, ""};
  const NetworkParams params = fig2_params();
  std::ostringstream detail;

  NetworkParams quiet = params;
  quiet.q = 0.0;
  const bool transforms_one = laplace_i1(1.0, 1.0, 0.7, 0.5, 0.0, 4.0) == 1.0 &&
                              laplace_i2(1.0, 1.0, 0.5, 0.0, 0.5, 4.0) == 1.0 &&
                              laplace_i3(1.0, 1.0, 1.5, 0.5, 0.0, 0.5, 4.0) == 1.0;
  if (!transforms_one) res.pass = false;

  double worst_cov = 0.0;
  for (double v : {0.0, 1.0}) {
    const CoverageEstimate est = coverage_file2_total(quiet, {v, 1.0});
    worst_cov = std::max(worst_cov, std::abs(est.value - 1.0));
  }
  if (worst_cov > 1e-3) res.pass = false;

  SimulationConfig cfg;
  cfg.n_trials = opts.quick ? 500 : 2000;
  cfg.seed = opts.seed;
  cfg.threads = opts.workers;
  const CoverageEstimate mc = estimate_coverage(quiet, {1.0, 1.0}, cfg);
  if (mc.value != 1.0) res.pass = false;

  const CoverageEstimate general = coverage_file2_total(params, {0.0, 1.0});
  const double direct = static_coverage_direct(params, 1.0, {});
  const double d_static = std::abs(general.value - direct);
  if (d_static > 1e-5) res.pass = false;

  detail << "transforms(q=0)=1: " << (transforms_one ? "yes" : "NO")
         << " |cov(q=0)-1|=" << fmt(worst_cov) << " mc(q=0)=" << fmt(mc.value)
         << " |static general-direct|=" << fmt(d_static);
  res.detail = detail.str();
  return res;
}

CheckResult check_laplace_bounds(const ValidationOptions& opts) {
  CheckResult res{"8", "Laplace transform bounds and monotonicity", true, ""};
  TrialRng rng(opts.seed, 8);
  const double s_grid[4] = {0.1, 1.0, 10.0, 100.0};
  int violations = 0;

  for (int i = 0; i < 100; ++i) {
    const double r1 = uniform_in(rng, 0.01, 2.0);
    const double v = i % 7 == 0 ? 0.0 : uniform_in(rng, 0.0, 3.0);
    const double z1 = std::max(0.0, r1 - v);
    const double r2 = z1 + uniform_in(rng, 0.01, 2.0);
    const double theta = uniform_in(rng, 0.0, kPi);
    const double q = uniform_in(rng, 0.05, 1.0);
    const double lam = uniform_in(rng, 0.05, 1.5);
    const double alpha = uniform_in(rng, 2.5, 6.0);

    double prev[3] = {2.0, 2.0, 2.0};
    for (double s : s_grid) {
      const double values[3] = {laplace_i1(s, r1, theta, v, q, alpha),
                                laplace_i2(s, r1, v, q, lam, alpha),
                                laplace_i3(s, r1, r2, v, q, lam, alpha)};
      for (int k = 0; k < 3; ++k) {
        if (!(values[k] > 0.0 && values[k] <= 1.0)) ++violations;
        if (values[k] > prev[k] + 1e-12) ++violations;
        prev[k] = values[k];
      }
      const double disc_only = laplace_i3_disc_only(s, r2, q, lam, alpha);
      if (laplace_i3(s, r1, r2, v, q, lam, alpha) < disc_only - 1e-15) ++violations;
    }
  }
  res.pass = violations == 0;
  res.detail = "violations=" + std::to_string(violations) + " over 100 configurations";
  return res;
}

CheckResult check_reproducibility(const ValidationOptions& opts) {
  CheckResult res{"9", "reproducibility and CI shrinkage", true, ""};
  const NetworkParams params = fig2_params();
  const MobilityQuery query{1.0, 1.0};
  std::ostringstream detail;

  auto run_csv = [&]() {
    SimulationConfig cfg;
    cfg.n_trials = opts.quick ? 5000 : 20000;
    cfg.seed = opts.seed + 9;
    cfg.threads = opts.workers;
    std::vector<ResultRow> rows;
    rows.push_back(to_row(coverage_file2_total(params, query)));
    rows.push_back(to_row(estimate_coverage(params, query, cfg)));
    return to_csv(rows);
  };
  const std::string first = run_csv();
  const std::string second = run_csv();
  const bool identical = first == second;
  if (!identical) res.pass = false;

  double widths[3] = {0.0, 0.0, 0.0};
  const std::uint64_t ns[3] = {1000, 10000, opts.quick ? 20000ull : 100000ull};
  for (int k = 0; k < 3; ++k) {
    SimulationConfig cfg;
    cfg.n_trials = ns[k];
    cfg.seed = opts.seed + 90 + static_cast<std::uint64_t>(k);
    cfg.threads = opts.workers;
    widths[k] = estimate_coverage(params, query, cfg).error;
  }
  detail << "csv identical=" << (identical ? "yes" : "NO") << "; widths: ";
  for (int k = 0; k < 3; ++k) detail << fmt(widths[k]) << " ";
  for (int k = 0; k + 1 < 3; ++k) {
    const double expected = std::sqrt(static_cast<double>(ns[k + 1]) /
                                      static_cast<double>(ns[k]));
    const double ratio = widths[k] / widths[k + 1];
    if (std::abs(ratio / expected - 1.0) > 0.2) {
      res.pass = false;
      detail << "shrinkage off at step " << k << " (ratio " << fmt(ratio) << ") ";
    }
  }
  res.detail = detail.str();
  return res;
}

}  // namespace

ValidationReport run_acceptance_suite(const ValidationOptions& opts) {
  ValidationReport report;
  report.quick = opts.quick;
  report.checks.push_back(check_analytic_vs_montecarlo(opts));
  report.checks.push_back(check_asymptotic_closed_form(opts));
  report.checks.push_back(check_mobility_monotonicity(opts));
  report.checks.push_back(check_threshold_monotonicity(opts));
  report.checks.push_back(check_distribution_normalization(opts));
  report.checks.push_back(check_lune_oracles(opts));
  report.checks.push_back(check_degeneracies(opts));
  report.checks.push_back(check_laplace_bounds(opts));
  report.checks.push_back(check_reproducibility(opts));
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream os;
  if (report.quick) os << "smoke-level run: reduced trial counts, CI-width checks waived\n";
  for (const CheckResult& c : report.checks)
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << c.detail
       << "\n";
  return os.str();
}

}  // namespace d2dcache
