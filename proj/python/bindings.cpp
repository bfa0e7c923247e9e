#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "d2dcache/coverage.hpp"
#include "d2dcache/distributions.hpp"
#include "d2dcache/geometry.hpp"
#include "d2dcache/interference.hpp"
#include "d2dcache/simulator.hpp"

namespace py = pybind11;
using namespace d2dcache;

PYBIND11_MODULE(_core, m) {
  m.doc() = "coverage analysis of the farther-cached file portion in a two-portion "
            "D2D caching network under user displacement";

  py::class_<NetworkParams>(m, "NetworkParams")
      .def(py::init([](double lambda, double p_a, double q, double alpha) {
             NetworkParams p{lambda, p_a, q, alpha};
             p.validate();
             return p;
           }),
           py::arg("lam") = 1.0, py::arg("p_a") = 0.5, py::arg("q") = 0.5,
           py::arg("alpha") = 4.0)
      .def_readwrite("lam", &NetworkParams::lambda)
      .def_readwrite("p_a", &NetworkParams::p_a)
      .def_readwrite("q", &NetworkParams::q)
      .def_readwrite("alpha", &NetworkParams::alpha);

  py::class_<MobilityQuery>(m, "MobilityQuery")
      .def(py::init([](double v, double t) {
             MobilityQuery q{v, t};
             q.validate();
             return q;
           }),
           py::arg("v") = 0.0, py::arg("t") = 1.0)
      .def_readwrite("v", &MobilityQuery::v)
      .def_readwrite("t", &MobilityQuery::t);

  py::enum_<Method>(m, "Method")
      .value("analytic", Method::analytic)
      .value("asymptotic", Method::asymptotic)
      .value("montecarlo", Method::montecarlo);

  py::enum_<GeometryCase>(m, "GeometryCase")
      .value("disjoint", GeometryCase::disjoint)
      .value("intersecting", GeometryCase::intersecting)
      .value("engulfed", GeometryCase::engulfed);

  py::class_<CoverageEstimate>(m, "CoverageEstimate")
      .def_readonly("value", &CoverageEstimate::value)
      .def_readonly("error", &CoverageEstimate::error)
      .def_readonly("method", &CoverageEstimate::method)
      .def_readonly("converged", &CoverageEstimate::converged)
      .def_readonly("degenerate", &CoverageEstimate::degenerate)
      .def_readonly("ci_low", &CoverageEstimate::ci_low)
      .def_readonly("ci_high", &CoverageEstimate::ci_high)
      .def_readonly("n_trials", &CoverageEstimate::n_trials)
      .def_readonly("seed", &CoverageEstimate::seed)
      .def_readonly("redraw_fraction", &CoverageEstimate::redraw_fraction)
      .def("__repr__", [](const CoverageEstimate& e) {
        return "<CoverageEstimate " + std::string(method_name(e.method)) + " value=" +
               std::to_string(e.value) + " +-" + std::to_string(e.error) + ">";
      });

  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def(py::init([](double window_radius, std::uint64_t n_trials, std::uint64_t seed,
                       double ci_level, unsigned threads) {
             SimulationConfig c;
             c.window_radius = window_radius;
             c.n_trials = n_trials;
             c.seed = seed;
             c.ci_level = ci_level;
             c.threads = threads;
             c.validate();
             return c;
           }),
           py::arg("window_radius") = 0.0, py::arg("n_trials") = 100000,
           py::arg("seed") = 1, py::arg("ci_level") = 0.99, py::arg("threads") = 0)
      .def_readwrite("window_radius", &SimulationConfig::window_radius)
      .def_readwrite("n_trials", &SimulationConfig::n_trials)
      .def_readwrite("seed", &SimulationConfig::seed)
      .def_readwrite("ci_level", &SimulationConfig::ci_level)
      .def_readwrite("threads", &SimulationConfig::threads);

  m.def("classify", [](double r1, double r2, double v) { return classify({r1, r2, v}); },
        py::arg("r1"), py::arg("r2"), py::arg("v"));
  m.def("lune_area", [](double r1, double r2, double v) { return lune_area({r1, r2, v}); },
        py::arg("r1"), py::arg("r2"), py::arg("v"));
  m.def("region_area",
        [](double r1, double r2, double v) { return region_area_A({r1, r2, v}); },
        py::arg("r1"), py::arg("r2"), py::arg("v"),
        "area of C2 minus C1 on the serving-distance support");
  m.def("pdf_r1", &pdf_r1, py::arg("r1"), py::arg("params"));
  m.def("pdf_r2_given_r1", &pdf_r2_given_r1, py::arg("r2"), py::arg("r1"), py::arg("v"),
        py::arg("lambda2"));
  m.def("ccdf_r2_given_r1", &ccdf_r2_given_r1, py::arg("r2"), py::arg("r1"), py::arg("v"),
        py::arg("lambda2"));
  m.def("laplace_i1", &laplace_i1, py::arg("s"), py::arg("r1"), py::arg("theta"),
        py::arg("v"), py::arg("q"), py::arg("alpha"));
  m.def("laplace_i2",
        [](double s, double r1, double v, double q, double lambda_b, double alpha) {
          return laplace_i2(s, r1, v, q, lambda_b, alpha);
        },
        py::arg("s"), py::arg("r1"), py::arg("v"), py::arg("q"), py::arg("lambda_b"),
        py::arg("alpha"));
  m.def("laplace_i3",
        [](double s, double r1, double r2, double v, double q, double lambda_a,
           double alpha) { return laplace_i3(s, r1, r2, v, q, lambda_a, alpha); },
        py::arg("s"), py::arg("r1"), py::arg("r2"), py::arg("v"), py::arg("q"),
        py::arg("lambda_a"), py::arg("alpha"));
  m.def("rho1", [](double t, double alpha) { return rho1(t, alpha); }, py::arg("t"),
        py::arg("alpha"));
  m.def("rho2", [](double t, double alpha) { return rho2(t, alpha); }, py::arg("t"),
        py::arg("alpha"));

  m.def("coverage_total",
        [](const NetworkParams& p, const MobilityQuery& q) {
          return coverage_file2_total(p, q);
        },
        py::arg("params"), py::arg("query"),
        "analytic coverage probability of file 2 (subcase mixture)",
        py::call_guard<py::gil_scoped_release>());
  m.def("coverage_asymptotic", &coverage_file2_asymptotic, py::arg("params"), py::arg("t"));
  m.def("estimate_coverage", &estimate_coverage, py::arg("params"), py::arg("query"),
        py::arg("config"), "Monte Carlo coverage estimate",
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep_v",
        [](const NetworkParams& p, const std::vector<double>& grid, double t,
           unsigned workers) { return sweep(p, SweepAxis::v, grid, t, workers); },
        py::arg("params"), py::arg("v_grid"), py::arg("t") = 1.0, py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep_t",
        [](const NetworkParams& p, const std::vector<double>& grid, double v,
           unsigned workers) { return sweep(p, SweepAxis::t, grid, v, workers); },
        py::arg("params"), py::arg("t_grid"), py::arg("v") = 0.0, py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
}
