"""Coverage analysis of the farther-cached file portion in a two-portion
device-to-device caching network under user displacement.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (
    CoverageEstimate,
    GeometryCase,
    Method,
    MobilityQuery,
    NetworkParams,
    SimulationConfig,
    ccdf_r2_given_r1,
    classify,
    coverage_asymptotic,
    coverage_total,
    estimate_coverage,
    laplace_i1,
    laplace_i2,
    laplace_i3,
    lune_area,
    pdf_r1,
    pdf_r2_given_r1,
    region_area,
    rho1,
    rho2,
    sweep_t,
    sweep_v,
)

__all__ = [
    "CoverageEstimate",
    "GeometryCase",
    "Method",
    "MobilityQuery",
    "NetworkParams",
    "SimulationConfig",
    "ccdf_r2_given_r1",
    "classify",
    "coverage_asymptotic",
    "coverage_total",
    "estimate_coverage",
    "laplace_i1",
    "laplace_i2",
    "laplace_i3",
    "lune_area",
    "pdf_r1",
    "pdf_r2_given_r1",
    "region_area",
    "rho1",
    "rho2",
    "sweep_t",
    "sweep_v",
]
