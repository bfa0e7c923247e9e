#include "d2dcache/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "d2dcache/philox.hpp"
#include "parallel_for.hpp"

namespace d2dcache {
namespace {

constexpr double kPi = std::numbers::pi;

double pathloss_from_d2(double d2, double alpha) {
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * alpha);
}

double exp_draw(TrialRng& rng) { return -std::log1p(-rng.uniform()); }

struct Workspace {
  std::vector<double> x, y;
  std::vector<unsigned char> mark_a;
};

// One realization of the marked process in a disc of radius `radius`
// centered at the midpoint of the two user locations.
std::size_t draw_process(const NetworkParams& params, double v, double radius, TrialRng& rng,
                         Workspace& ws) {
  const double mean = params.lambda * kPi * radius * radius;
  std::poisson_distribution<long long> poisson(mean);
  const auto n = static_cast<std::size_t>(poisson(rng));
  ws.x.resize(n);
  ws.y.resize(n);
  ws.mark_a.resize(n);
  const double cx = -0.5 * v;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * kPi * rng.uniform();
    ws.x[i] = cx + r * std::cos(phi);
    ws.y[i] = r * std::sin(phi);
  }
  for (std::size_t i = 0; i < n; ++i) ws.mark_a[i] = rng.uniform() < params.p_a ? 1 : 0;
  return n;
}

struct Selection {
  bool ok = false;
  std::size_t serving = 0;
  double r1 = 0.0;
  double r2 = 0.0;
};

// Nearest device overall at location 1 fixes file 1; the serving device at
// location 2 is the nearest one carrying the other portion.
Selection select_devices(const Workspace& ws, std::size_t n, double v) {
  Selection sel;
  if (n == 0) return sel;

  double best1 = std::numeric_limits<double>::infinity();
  std::size_t i1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = ws.x[i] + v;
    const double d2 = dx * dx + ws.y[i] * ws.y[i];
    if (d2 < best1) {
      best1 = d2;
      i1 = i;
    }
  }
  const unsigned char file1_a = ws.mark_a[i1];

  double best2 = std::numeric_limits<double>::infinity();
  std::size_t iserv = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (ws.mark_a[i] == file1_a) continue;
    const double d2 = ws.x[i] * ws.x[i] + ws.y[i] * ws.y[i];
    if (d2 < best2) {
      best2 = d2;
      iserv = i;
    }
  }
  if (iserv == n) return sel;

  sel.ok = true;
  sel.serving = iserv;
  sel.r1 = std::sqrt(best1);
  sel.r2 = std::sqrt(best2);
  return sel;
}

TrialOutcome simulate_one(const NetworkParams& params, const MobilityQuery& query,
                          const SimulationConfig& cfg, double radius, std::uint64_t trial_index,
                          Workspace& ws) {
  TrialRng rng(cfg.seed, trial_index);
  TrialOutcome out;

  for (int attempt = 0; attempt <= cfg.max_redraws_per_trial; ++attempt) {
    const std::size_t n = draw_process(params, query.v, radius, rng, ws);
    const Selection sel = select_devices(ws, n, query.v);
    if (!sel.ok) {
      ++out.redraws;
      continue;
    }

    const double h_serving = exp_draw(rng);
    double interference = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == sel.serving) continue;
      const bool active = rng.uniform() < params.q;
      const double h = exp_draw(rng);
      if (!active) continue;
      const double d2 = ws.x[i] * ws.x[i] + ws.y[i] * ws.y[i];
      interference += h * pathloss_from_d2(d2, params.alpha);
    }

    const double signal = h_serving * pathloss_from_d2(sel.r2 * sel.r2, params.alpha);
    out.covered = signal > query.t * interference;
    out.r1 = sel.r1;
    out.r2 = sel.r2;
    out.sir = interference > 0.0 ? signal / interference
                                 : std::numeric_limits<double>::infinity();
    out.geometry_case = classify({sel.r1, sel.r2, query.v});

    // Conditioning invariant: every device is at least r1 from location 1,
    // so the serving distance cannot undercut r1 - v.
    const double support = std::max(0.0, sel.r1 - query.v);
    if (out.r2 < support - 1e-9 * std::max(1.0, sel.r1))
      throw SimulationError("run_trial: serving distance violates the exclusion conditioning");
    return out;
  }
  throw SimulationError("run_trial: redraw budget exhausted; window too small or "
                        "opposite-portion population too thin");
}

CoverageEstimate degenerate_estimate(const NetworkParams& params, const MobilityQuery& query,
                                     const SimulationConfig& cfg) {
  CoverageEstimate est;
  est.method = Method::montecarlo;
  est.params = params;
  est.query = query;
  est.degenerate = true;
  est.n_trials = cfg.n_trials;
  est.seed = cfg.seed;
  return est;
}

}  // namespace

double default_window_radius(const NetworkParams& params, const MobilityQuery& query) {
  const double thin = std::min({params.p_a, params.p_b(), 0.5});
  if (!(thin > 0.0))
    throw std::invalid_argument("default_window_radius: degenerate caching split");
  return 0.5 * query.v + 12.0 / std::sqrt(params.lambda * thin);
}

TrialOutcome run_trial(const NetworkParams& params, const MobilityQuery& query,
                       const SimulationConfig& cfg, std::uint64_t trial_index) {
  params.validate();
  query.validate();
  cfg.validate();
  const double radius =
      cfg.window_radius > 0.0 ? cfg.window_radius : default_window_radius(params, query);
  Workspace ws;
  return simulate_one(params, query, cfg, radius, trial_index, ws);
}

CoverageEstimate estimate_coverage(const NetworkParams& params, const MobilityQuery& query,
                                   const SimulationConfig& cfg) {
  params.validate();
  query.validate();
  cfg.validate();
  if (params.p_a == 0.0 || params.p_a == 1.0) return degenerate_estimate(params, query, cfg);

  const double radius =
      cfg.window_radius > 0.0 ? cfg.window_radius : default_window_radius(params, query);
  const std::uint64_t n = cfg.n_trials;
  const unsigned workers = detail::resolve_workers(cfg.threads);
  const std::uint64_t chunk_count = std::min<std::uint64_t>(n, workers * 8ull);
  const std::uint64_t chunk_size = (n + chunk_count - 1) / chunk_count;

  std::vector<std::uint64_t> covered(chunk_count, 0), redraws(chunk_count, 0);
  detail::parallel_for(chunk_count, workers, [&](std::size_t c) {
    Workspace ws;
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min(n, begin + chunk_size);
    std::uint64_t cov = 0, red = 0;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      const TrialOutcome out = simulate_one(params, query, cfg, radius, trial, ws);
      cov += out.covered ? 1 : 0;
      red += static_cast<std::uint64_t>(out.redraws);
    }
    covered[c] = cov;
    redraws[c] = red;
  });

  std::uint64_t total_covered = 0, total_redraws = 0;
  for (std::uint64_t c : covered) total_covered += c;
  for (std::uint64_t r : redraws) total_redraws += r;

  CoverageEstimate est;
  est.method = Method::montecarlo;
  est.params = params;
  est.query = query;
  est.n_trials = n;
  est.seed = cfg.seed;
  est.value = static_cast<double>(total_covered) / static_cast<double>(n);
  wilson_interval(static_cast<double>(total_covered), static_cast<double>(n), cfg.ci_level,
                  &est.ci_low, &est.ci_high);
  est.error = 0.5 * (est.ci_high - est.ci_low);
  est.redraw_fraction = static_cast<double>(total_redraws) / static_cast<double>(n);
  return est;
}

WindowValidationReport validate_window(const NetworkParams& params, const MobilityQuery& query,
                                       const SimulationConfig& cfg) {
  params.validate();
  query.validate();
  cfg.validate();

  WindowValidationReport report;
  report.base_radius =
      cfg.window_radius > 0.0 ? cfg.window_radius : default_window_radius(params, query);
  report.doubled_radius = 2.0 * report.base_radius;
  report.n_trials = std::min<std::uint64_t>(cfg.n_trials,
                                            std::max<std::uint64_t>(1000, cfg.n_trials / 5));

  const std::uint64_t n = report.n_trials;
  const unsigned workers = detail::resolve_workers(cfg.threads);
  const std::uint64_t chunk_count = std::min<std::uint64_t>(n, workers * 8ull);
  const std::uint64_t chunk_size = (n + chunk_count - 1) / chunk_count;

  // Paired design: realize the doubled window once per trial, score it both
  // with every device and with devices truncated to the base radius. The
  // same per-device fading and activity draws serve both variants, so the
  // shift measures the window effect, not sampling noise.
  std::vector<std::uint64_t> covered_base(chunk_count, 0), covered_full(chunk_count, 0);
  detail::parallel_for(chunk_count, workers, [&](std::size_t c) {
    Workspace ws;
    std::vector<double> fading;
    std::vector<unsigned char> active;
    const std::uint64_t begin = c * chunk_size;
    const std::uint64_t end = std::min(n, begin + chunk_size);
    const double base_r2max = report.base_radius * report.base_radius;

    for (std::uint64_t trial = begin; trial < end; ++trial) {
      TrialRng rng(cfg.seed ^ 0x77696e646f77ull, trial);
      bool done = false;
      for (int attempt = 0; attempt <= cfg.max_redraws_per_trial && !done; ++attempt) {
        const std::size_t ntot = draw_process(params, query.v, report.doubled_radius, rng, ws);
        fading.resize(ntot);
        active.resize(ntot);
        for (std::size_t i = 0; i < ntot; ++i) {
          active[i] = rng.uniform() < params.q ? 1 : 0;
          fading[i] = exp_draw(rng);
        }

        const double mid_x = -0.5 * query.v;
        auto score = [&](bool truncate) -> int {
          Workspace sub;
          std::vector<std::size_t> idx;
          for (std::size_t i = 0; i < ntot; ++i) {
            if (truncate) {
              const double dx = ws.x[i] - mid_x;
              if (dx * dx + ws.y[i] * ws.y[i] > base_r2max) continue;
            }
            idx.push_back(i);
            sub.x.push_back(ws.x[i]);
            sub.y.push_back(ws.y[i]);
            sub.mark_a.push_back(ws.mark_a[i]);
          }
          const Selection sel = select_devices(sub, sub.x.size(), query.v);
          if (!sel.ok) return -1;
          double interference = 0.0;
          for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k == sel.serving || !active[idx[k]]) continue;
            const double d2 = sub.x[k] * sub.x[k] + sub.y[k] * sub.y[k];
            interference += fading[idx[k]] * pathloss_from_d2(d2, params.alpha);
          }
          const double signal =
              fading[idx[sel.serving]] * pathloss_from_d2(sel.r2 * sel.r2, params.alpha);
          return signal > query.t * interference ? 1 : 0;
        };

        const int base = score(true);
        if (base < 0) continue;  // the truncated variant would have redrawn
        const int full = score(false);
        if (full < 0) continue;
        covered_base[c] += static_cast<std::uint64_t>(base);
        covered_full[c] += static_cast<std::uint64_t>(full);
        done = true;
      }
      if (!done) throw SimulationError("validate_window: redraw budget exhausted");
    }
  });

  std::uint64_t base_total = 0, full_total = 0;
  for (std::uint64_t c : covered_base) base_total += c;
  for (std::uint64_t c : covered_full) full_total += c;

  report.base_estimate = static_cast<double>(base_total) / static_cast<double>(n);
  report.doubled_estimate = static_cast<double>(full_total) / static_cast<double>(n);
  report.shift = std::abs(report.doubled_estimate - report.base_estimate);
  double lo = 0.0, hi = 0.0;
  wilson_interval(static_cast<double>(base_total), static_cast<double>(n), cfg.ci_level, &lo,
                  &hi);
  report.ci_half_width = 0.5 * (hi - lo);
  report.pass = report.shift < report.ci_half_width;
  return report;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");

  // Acklam's rational approximation, then one Halley step against erfc.
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double u = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double u = p - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }

  const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double step = err * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - step / (1.0 + 0.5 * x * step);
}

void wilson_interval(double successes, double n, double ci_level, double* low, double* high) {
  if (!(n > 0.0)) throw std::invalid_argument("wilson_interval: n must be positive");
  const double z = normal_quantile(0.5 + 0.5 * ci_level);
  const double phat = successes / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double hw = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  if (low) *low = std::max(0.0, center - hw);
  if (high) *high = std::min(1.0, center + hw);
}

}  // namespace d2dcache
