#include "d2dcache/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2dcache/coverage.hpp"
#include "d2dcache/results_io.hpp"
#include "d2dcache/simulator.hpp"
#include "d2dcache/validation.hpp"

namespace d2dcache {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

// Flat JSON config support for CLI11: {"pa": 0.5, "v-grid": [0, 1, 2], ...}
// with the same names as the long flags. Command-line flags override.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    input >> j;
    if (!j.is_object()) throw CLI::FileError("config must be a flat JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      if (value.is_array()) {
        for (const auto& element : value) item.inputs.push_back(scalar(element));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(item);
    }
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    return value.dump();
  }
};

struct CliOptions {
  NetworkParams params{1.0, 0.5, 0.5, 4.0};  // Fig.-2 style defaults
  double t_db = 0.0;
  double v = 0.0;
  std::vector<std::string> v_grid_tokens;
  std::vector<std::string> t_db_grid_tokens;
  std::string method = "analytic";
  SimulationConfig sim{};
  std::string out;
  std::string format = "csv";
  unsigned workers = 0;
  bool quick = false;
};

// Grid tokens are either plain numbers or "start:step:stop" ranges.
std::vector<double> expand_grid(const std::vector<std::string>& tokens) {
  std::vector<double> grid;
  for (const std::string& token : tokens) {
    const auto c1 = token.find(':');
    if (c1 == std::string::npos) {
      grid.push_back(std::stod(token));
      continue;
    }
    const auto c2 = token.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw CLI::ValidationError("grid", "range token must be start:step:stop");
    const double start = std::stod(token.substr(0, c1));
    const double step = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
    const double stop = std::stod(token.substr(c2 + 1));
    if (!(step > 0.0)) throw CLI::ValidationError("grid", "range step must be positive");
    for (double x = start; x <= stop + 0.5 * step; x += step) grid.push_back(x);
  }
  return grid;
}

void add_param_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--pa", opt.params.p_a, "caching probability of portion A");
  cmd->add_option("--q", opt.params.q, "interferer activity probability");
  cmd->add_option("--alpha", opt.params.alpha, "pathloss exponent (> 2)");
  cmd->add_option("--lambda", opt.params.lambda, "device density");
  cmd->add_option("--trials", opt.sim.n_trials, "Monte Carlo trials per point");
  cmd->add_option("--seed", opt.sim.seed, "Monte Carlo seed");
  cmd->add_option("--window-radius", opt.sim.window_radius,
                  "simulation window radius (default: derived)");
  cmd->add_option("--out", opt.out, "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", opt.workers, "worker threads (0: all cores)");
  cmd->set_config("--config", "", "flat JSON config file; flags override");
  cmd->config_formatter(std::make_shared<JsonConfig>());
}

int emit(const CliOptions& opt, const std::vector<ResultRow>& rows, bool any_failed) {
  const std::string text = opt.format == "json" ? to_json(rows) : to_csv(rows);
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text;
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file " << opt.out << "\n";
      return kExitNumeric;
    }
    file << text;
  }
  return any_failed ? kExitNumeric : kExitOk;
}

bool row_failed(const CoverageEstimate& est) {
  return !est.converged || std::isnan(est.value);
}

int run_coverage(const CliOptions& opt) {
  const MobilityQuery query{opt.v, db_to_linear(opt.t_db)};
  SimulationConfig cfg = opt.sim;
  cfg.threads = opt.workers;

  std::vector<ResultRow> rows;
  bool failed = false;
  const bool want_analytic = opt.method == "analytic" || opt.method == "both";
  const bool want_mc = opt.method == "montecarlo" || opt.method == "both";

  try {
    if (want_analytic) {
      const CoverageEstimate est = coverage_file2_total(opt.params, query);
      failed |= row_failed(est);
      rows.push_back(to_row(est));
    }
    if (want_mc) {
      const CoverageEstimate est = estimate_coverage(opt.params, query, cfg);
      rows.push_back(to_row(est));
    }
    if (opt.method == "asymptotic") {
      CoverageEstimate est;
      est.method = Method::asymptotic;
      est.params = opt.params;
      est.query = query;
      est.value = coverage_file2_asymptotic(opt.params, query.t);
      est.ci_low = est.ci_high = est.value;
      rows.push_back(to_row(est));
    }
  } catch (const NumericError& err) {
    std::cerr << "numeric failure: " << err.what() << "\n";
    emit(opt, rows, true);
    return kExitNumeric;
  }
  return emit(opt, rows, failed);
}

int run_sweep(const CliOptions& opt, bool sweep_v) {
  const std::vector<double> grid =
      expand_grid(sweep_v ? opt.v_grid_tokens : opt.t_db_grid_tokens);
  if (grid.empty()) {
    std::cerr << "error: sweep grid is empty\n";
    return kExitUsage;
  }

  std::vector<double> linear_grid = grid;
  if (!sweep_v)
    for (double& t : linear_grid) t = db_to_linear(t);
  const double fixed = sweep_v ? db_to_linear(opt.t_db) : opt.v;

  std::vector<ResultRow> rows;
  bool failed = false;
  const bool want_analytic = opt.method == "analytic" || opt.method == "both";
  const bool want_mc = opt.method == "montecarlo" || opt.method == "both";

  if (want_analytic) {
    const std::vector<CoverageEstimate> estimates =
        sweep(opt.params, sweep_v ? SweepAxis::v : SweepAxis::t, linear_grid, fixed,
              opt.workers);
    for (const CoverageEstimate& est : estimates) {
      failed |= row_failed(est);
      rows.push_back(to_row(est));
    }
  }
  if (want_mc) {
    SimulationConfig cfg = opt.sim;
    cfg.threads = opt.workers;
    for (double x : linear_grid) {
      const MobilityQuery query = sweep_v ? MobilityQuery{x, fixed} : MobilityQuery{fixed, x};
      try {
        rows.push_back(to_row(estimate_coverage(opt.params, query, cfg)));
      } catch (const NumericError& err) {
        std::cerr << "numeric failure at grid point " << x << ": " << err.what() << "\n";
        failed = true;
      }
    }
  }
  // v-sweeps carry the large-displacement reference alongside the data.
  if (sweep_v && opt.params.p_a > 0.0 && opt.params.p_a < 1.0) {
    const double asym = coverage_file2_asymptotic(opt.params, fixed);
    for (double v : linear_grid) {
      CoverageEstimate est;
      est.method = Method::asymptotic;
      est.params = opt.params;
      est.query = {v, fixed};
      est.value = asym;
      est.ci_low = est.ci_high = asym;
      rows.push_back(to_row(est));
    }
  }
  return emit(opt, rows, failed);
}

int run_asymptotic(const CliOptions& opt) {
  CoverageEstimate est;
  est.method = Method::asymptotic;
  est.params = opt.params;
  est.query = {0.0, db_to_linear(opt.t_db)};
  est.value = coverage_file2_asymptotic(opt.params, est.query.t);
  est.ci_low = est.ci_high = est.value;
  return emit(opt, {to_row(est)}, false);
}

int run_validate(const CliOptions& opt) {
  ValidationOptions vopts;
  vopts.quick = opt.quick;
  vopts.seed = opt.sim.seed;
  vopts.workers = opt.workers;
  const ValidationReport report = run_acceptance_suite(vopts);
  const std::string text = format_report(report);
  std::cout << text;
  if (!opt.out.empty() && opt.out != "-") {
    std::ofstream file(opt.out, std::ios::binary);
    file << text;
  }
  return report.all_pass() ? kExitOk : kExitNumeric;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"coverage probability of the farther-cached file portion in a "
               "two-portion D2D caching network under user displacement"};
  app.require_subcommand(1);

  CliOptions opt;

  CLI::App* coverage = app.add_subcommand(
      "coverage", "evaluate one (v, T) point analytically and/or by simulation");
  add_param_flags(coverage, opt);
  coverage->add_option("--t-db", opt.t_db, "SIR threshold in dB")->required();
  coverage->add_option("--v", opt.v, "displacement between the two locations")->required();
  coverage->add_option("--method", opt.method, "analytic, montecarlo, asymptotic or both")
      ->check(CLI::IsMember({"analytic", "montecarlo", "asymptotic", "both"}));

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "sweep v or T over a grid (one axis only)");
  add_param_flags(sweep_cmd, opt);
  sweep_cmd->add_option("--t-db", opt.t_db, "fixed threshold in dB for v-sweeps");
  sweep_cmd->add_option("--v", opt.v, "fixed displacement for T-sweeps");
  CLI::Option* vg = sweep_cmd->add_option("--v-grid", opt.v_grid_tokens,
                                          "v grid: numbers or start:step:stop");
  CLI::Option* tg = sweep_cmd->add_option("--t-db-grid", opt.t_db_grid_tokens,
                                          "T grid in dB: numbers or start:step:stop");
  sweep_cmd->add_option("--method", opt.method, "analytic, montecarlo or both")
      ->check(CLI::IsMember({"analytic", "montecarlo", "both"}));

  CLI::App* asymptotic = app.add_subcommand(
      "asymptotic", "closed-form large-displacement coverage probability");
  add_param_flags(asymptotic, opt);
  asymptotic->add_option("--t-db", opt.t_db, "SIR threshold in dB")->required();

  CLI::App* validate = app.add_subcommand("validate", "run the agreement/property suite");
  add_param_flags(validate, opt);
  validate->add_flag("--quick", opt.quick, "smoke level: reduced trial counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    opt.params.validate();
    if (coverage->parsed()) return run_coverage(opt);
    if (sweep_cmd->parsed()) {
      const bool has_v = vg->count() > 0;
      const bool has_t = tg->count() > 0;
      if (has_v == has_t) {
        std::cerr << "error: sweep requires exactly one of --v-grid / --t-db-grid\n";
        return kExitUsage;
      }
      return run_sweep(opt, has_v);
    }
    if (asymptotic->parsed()) return run_asymptotic(opt);
    if (validate->parsed()) return run_validate(opt);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "numeric failure: " << err.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace d2dcache
