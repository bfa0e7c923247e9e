#pragma once

#include <string>
#include <vector>

#include "d2dcache/types.hpp"

namespace d2dcache {

/// One output record; the column set is fixed.
struct ResultRow {
  std::string method;
  double v = 0.0;
  double t_db = 0.0;
  double p_a = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
  double estimate = 0.0;
  double err = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
};

ResultRow to_row(const CoverageEstimate& est);

/// Exactly "method,v,T_db,p_a,q,alpha,lambda,estimate,err,ci_low,ci_high,n_trials,seed".
std::string csv_header();

std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);

}  // namespace d2dcache
