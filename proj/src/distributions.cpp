#include "d2dcache/distributions.hpp"

#include <cmath>
#include <numbers>

#include "d2dcache/geometry.hpp"

namespace d2dcache {

double pdf_r1(double r1, const NetworkParams& params) {
  params.validate();
  if (!(r1 >= 0.0)) throw std::domain_error("pdf_r1: requires r1 >= 0");
  const double lam = params.lambda;
  return 2.0 * std::numbers::pi * lam * r1 * std::exp(-lam * std::numbers::pi * r1 * r1);
}

double ccdf_r2_given_r1(double r2, double r1, double v, double lambda2) {
  if (!(lambda2 > 0.0)) throw std::invalid_argument("ccdf_r2_given_r1: requires lambda2 > 0");
  return std::exp(-lambda2 * region_area_A({r1, r2, v}));
}

double pdf_r2_given_r1(double r2, double r1, double v, double lambda2) {
  if (!(lambda2 > 0.0)) throw std::invalid_argument("pdf_r2_given_r1: requires lambda2 > 0");
  const CirclePair cp{r1, r2, v};
  return lambda2 * region_area_A_deriv(cp) * std::exp(-lambda2 * region_area_A(cp));
}

}  // namespace d2dcache
