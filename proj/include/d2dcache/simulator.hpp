#pragma once

#include <cstdint>

#include "d2dcache/geometry.hpp"
#include "d2dcache/types.hpp"

namespace d2dcache {

struct SimulationConfig {
  /// Simulation disc radius around the midpoint of the two user locations.
  /// Non-positive means: derive from the parameters (see default_window_radius).
  double window_radius = 0.0;
  std::uint64_t n_trials = 100000;
  std::uint64_t seed = 1;
  double ci_level = 0.99;
  int max_redraws_per_trial = 64;
  unsigned threads = 0;  ///< 0: use available parallelism

  void validate() const {
    if (n_trials < 1) throw std::invalid_argument("SimulationConfig: n_trials must be >= 1");
    if (!(ci_level > 0.0 && ci_level < 1.0))
      throw std::invalid_argument("SimulationConfig: ci_level must lie in (0, 1)");
    if (max_redraws_per_trial < 1)
      throw std::invalid_argument("SimulationConfig: max_redraws_per_trial must be >= 1");
  }
};

struct TrialOutcome {
  bool covered = false;
  double r1 = 0.0;
  double r2 = 0.0;
  double sir = 0.0;  ///< infinite when no interferer is active
  GeometryCase geometry_case = GeometryCase::disjoint;
  int redraws = 0;
};

class SimulationError : public NumericError {
 public:
  explicit SimulationError(const std::string& what) : NumericError(what) {}
};

/// Window radius covering both serving neighbourhoods with negligible
/// truncated interference: v/2 + 12 / sqrt(lambda * min(p_a, p_b, 1/2)).
double default_window_radius(const NetworkParams& params, const MobilityQuery& query);

/// Replays the two-location protocol once on a fresh point-process
/// realization. Deterministic in (cfg.seed, trial_index); trials with no
/// opposite-portion device in the window are redrawn up to the budget.
TrialOutcome run_trial(const NetworkParams& params, const MobilityQuery& query,
                       const SimulationConfig& cfg, std::uint64_t trial_index);

/// Mean of the covered flags over cfg.n_trials independent trials with a
/// Wilson score interval at cfg.ci_level. Deterministic for a fixed seed and
/// independent of execution order.
CoverageEstimate estimate_coverage(const NetworkParams& params, const MobilityQuery& query,
                                   const SimulationConfig& cfg);

struct WindowValidationReport {
  double base_radius = 0.0;
  double doubled_radius = 0.0;
  double base_estimate = 0.0;     ///< doubled-window batch truncated to the base radius
  double doubled_estimate = 0.0;  ///< same batch with the full doubled window
  double shift = 0.0;
  double ci_half_width = 0.0;
  std::uint64_t n_trials = 0;
  bool pass = false;
};

/// Reruns a reduced batch in a doubled window and reports how much the
/// estimate moves when the window shrinks back to the configured radius.
/// The two estimates share realizations, so the shift isolates the window
/// effect. Passes when the shift stays below the batch CI half-width.
WindowValidationReport validate_window(const NetworkParams& params, const MobilityQuery& query,
                                       const SimulationConfig& cfg);

/// Two-sided Wilson score interval half-width helpers used by the estimator.
double normal_quantile(double p);
void wilson_interval(double successes, double n, double ci_level, double* low, double* high);

}  // namespace d2dcache
