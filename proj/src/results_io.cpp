#include "d2dcache/results_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace d2dcache {
namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

ResultRow to_row(const CoverageEstimate& est) {
  ResultRow row;
  row.method = method_name(est.method);
  row.v = est.query.v;
  row.t_db = linear_to_db(est.query.t);
  row.p_a = est.params.p_a;
  row.q = est.params.q;
  row.alpha = est.params.alpha;
  row.lambda = est.params.lambda;
  row.estimate = est.value;
  row.err = est.error;
  row.ci_low = est.ci_low;
  row.ci_high = est.ci_high;
  row.n_trials = est.n_trials;
  row.seed = est.seed;
  return row;
}

std::string csv_header() {
  return "method,v,T_db,p_a,q,alpha,lambda,estimate,err,ci_low,ci_high,n_trials,seed";
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const ResultRow& r : rows) {
    out += r.method;
    for (double x : {r.v, r.t_db, r.p_a, r.q, r.alpha, r.lambda, r.estimate, r.err, r.ci_low,
                     r.ci_high}) {
      out += ',';
      out += format_double(x);
    }
    out += ',';
    out += std::to_string(r.n_trials);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<ResultRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    nlohmann::json obj;
    obj["method"] = r.method;
    obj["v"] = r.v;
    obj["T_db"] = r.t_db;
    obj["p_a"] = r.p_a;
    obj["q"] = r.q;
    obj["alpha"] = r.alpha;
    obj["lambda"] = r.lambda;
    obj["estimate"] = r.estimate;
    obj["err"] = r.err;
    obj["ci_low"] = r.ci_low;
    obj["ci_high"] = r.ci_high;
    obj["n_trials"] = r.n_trials;
    obj["seed"] = r.seed;
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

}  // namespace d2dcache
