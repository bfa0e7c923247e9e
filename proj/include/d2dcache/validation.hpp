#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2dcache/types.hpp"

namespace d2dcache {

struct ValidationOptions {
  bool quick = false;  ///< smoke level: reduced trial counts, Monte Carlo width checks waived
  std::uint64_t seed = 20260810;
  unsigned workers = 0;
  std::uint64_t mc_trials = 100000;  ///< trials per Monte Carlo agreement point (full mode)
};

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool quick = false;

  bool all_pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Runs the full agreement/property suite: dual-oracle analytic vs Monte
/// Carlo comparison, closed-form checks, monotonicity sweeps, distribution
/// normalization, geometry oracles, degenerate paths, transform bounds and
/// reproducibility. One CheckResult per criterion.
ValidationReport run_acceptance_suite(const ValidationOptions& opts = {});

/// One line per criterion: "[PASS|FAIL] <id>. <name>: <detail>".
std::string format_report(const ValidationReport& report);

}  // namespace d2dcache
