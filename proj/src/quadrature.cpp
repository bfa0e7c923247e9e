#include "d2dcache/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace d2dcache {
namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss rule on the odd-indexed nodes. Values from QUADPACK.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool splittable = true;
};

// One Gauss-Kronrod 15(7) evaluation with the QUADPACK error estimate.
Segment qk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const double f1 = f(center - absc);
    const double f2 = f(center + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const double f1 = f(center - absc);
    const double f2 = f(center + absc);
    if (jtwm1 < 7) {
      fv1[jtwm1] = f1;
      fv2[jtwm1] = f2;
    }
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Segment seg;
  seg.a = a;
  seg.b = b;
  seg.value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
  seg.error = err;
  return seg;
}

bool too_narrow(double a, double b) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return (b - a) <= 8.0 * eps * scale;
}

void check_breakpoints(const std::vector<double>& pts, double a, double b) {
  double prev = a;
  for (double p : pts) {
    if (!(p > prev) || !(p < b))
      throw std::invalid_argument(
          "QuadratureSpec: breakpoints must be strictly increasing and strictly "
          "inside the integration interval");
    prev = p;
  }
}

}  // namespace

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol >= 0.0) || spec.max_subdivisions < 1)
    throw std::invalid_argument("QuadratureSpec: invalid tolerances or budget");
  if (!(a <= b)) throw std::invalid_argument("integrate_finite: requires a <= b");

  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  check_breakpoints(spec.breakpoints, a, b);

  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(spec.max_subdivisions) + spec.breakpoints.size() + 2);
  double lo = a;
  for (double p : spec.breakpoints) {
    segs.push_back(qk15(f, lo, p));
    lo = p;
  }
  segs.push_back(qk15(f, lo, b));

  while (true) {
    double total = 0.0, err = 0.0;
    for (const Segment& s : segs) {
      total += s.value;
      err += s.error;
    }
    out.value = total;
    out.error_estimate = err;

    if (spec.divergence_cap > 0.0 && std::abs(total) > spec.divergence_cap)
      throw DivergenceError("integrate: running total exceeded the divergence cap");

    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (err <= tol) {
      out.converged = true;
      return out;
    }
    if (out.subdivisions_used >= spec.max_subdivisions) return out;

    std::size_t worst = segs.size();
    double worst_err = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (!segs[i].splittable) continue;
      if (segs[i].error >= worst_err) {
        worst_err = segs[i].error;
        worst = i;
      }
    }
    if (worst == segs.size()) return out;  // nothing left to refine

    Segment target = segs[worst];
    const double mid = 0.5 * (target.a + target.b);
    if (too_narrow(target.a, target.b) || mid <= target.a || mid >= target.b) {
      segs[worst].splittable = false;
      continue;
    }
    Segment left = qk15(f, target.a, mid);
    Segment right = qk15(f, mid, target.b);
    segs[worst] = left;
    segs.push_back(right);
    ++out.subdivisions_used;
  }
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a,
                                         const QuadratureSpec& spec) {
  if (!std::isfinite(a)) throw std::invalid_argument("integrate_semi_infinite: a must be finite");

  // r = a + t/(1-t), dr = dt/(1-t)^2.
  auto g = [&f, a](double t) {
    const double om = 1.0 - t;
    return f(a + t / om) / (om * om);
  };

  QuadratureSpec tspec = spec;
  tspec.breakpoints.clear();
  for (double r : spec.breakpoints) {
    const double d = r - a;
    if (!(d > 0.0)) throw std::invalid_argument("integrate_semi_infinite: breakpoint below a");
    tspec.breakpoints.push_back(d / (1.0 + d));
  }
  return integrate_finite(g, 0.0, 1.0, tspec);
}

}  // namespace d2dcache
