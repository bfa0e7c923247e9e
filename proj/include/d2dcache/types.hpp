#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace d2dcache {

/// Static network environment: device intensity, caching split, interferer
/// activity and pathloss exponent.
struct NetworkParams {
  double lambda = 1.0;  ///< device density per unit area, > 0
  double p_a = 0.5;     ///< probability a device caches portion A; p_b = 1 - p_a
  double q = 0.5;       ///< probability an interferer is active
  double alpha = 4.0;   ///< pathloss exponent, > 2

  double p_b() const { return 1.0 - p_a; }

  void validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw std::invalid_argument("NetworkParams: lambda must be positive and finite");
    if (!(p_a >= 0.0 && p_a <= 1.0))
      throw std::invalid_argument("NetworkParams: p_a must lie in [0, 1]");
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument("NetworkParams: q must lie in [0, 1]");
    if (!(alpha > 2.0) || !std::isfinite(alpha))
      throw std::invalid_argument("NetworkParams: alpha must exceed 2");
  }
};

/// One evaluation point: displacement between the two user locations and the
/// linear SIR threshold.
struct MobilityQuery {
  double v = 0.0;  ///< distance moved between location 1 and location 2, >= 0
  double t = 1.0;  ///< linear SIR threshold, > 0

  void validate() const {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("MobilityQuery: v must be non-negative and finite");
    if (!(t > 0.0) || !std::isfinite(t))
      throw std::invalid_argument("MobilityQuery: t must be positive and finite");
  }
};

/// Which file portion turned out to be nearest at location 1.
enum class Subcase {
  x,  ///< portion A is file 1 (probability p_a)
  y,  ///< portion B is file 1 (probability p_b)
};

enum class Method { analytic, asymptotic, montecarlo };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::asymptotic: return "asymptotic";
    case Method::montecarlo: return "montecarlo";
  }
  return "unknown";
}

/// A coverage probability together with how it was obtained and how much to
/// trust it.
struct CoverageEstimate {
  double value = 0.0;  ///< probability in [0, 1]
  double error = 0.0;  ///< absolute error estimate (analytic) or CI half-width (montecarlo)
  Method method = Method::analytic;
  NetworkParams params{};
  MobilityQuery query{};
  bool converged = true;    ///< quadrature reached its tolerance (analytic paths)
  bool degenerate = false;  ///< p_a in {0, 1}: one file-portion population is empty
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n_trials = 0;      ///< montecarlo only
  std::uint64_t seed = 0;          ///< montecarlo only
  double redraw_fraction = 0.0;    ///< montecarlo only
};

/// Thrown when a numerical evaluation cannot meet its contract.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace d2dcache
