"""Simulation and drift estimation for reflected diffusions."""

from ._core import (
    EstimateResult,
    InvariantDensity,
    McSummary,
    ModelNotErgodic,
    NoData,
    NormalityReport,
    SamplePath,
    SimulationDiverged,
    UndefinedVariance,
    bandwidth,
    delta_of_n,
    drift,
    estimate,
    midpoint_grid,
    normality_check,
    run_cell,
    simulate,
)

__all__ = [
    "EstimateResult",
    "InvariantDensity",
    "McSummary",
    "ModelNotErgodic",
    "NoData",
    "NormalityReport",
    "SamplePath",
    "SimulationDiverged",
    "UndefinedVariance",
    "bandwidth",
    "delta_of_n",
    "drift",
    "estimate",
    "midpoint_grid",
    "normality_check",
    "run_cell",
    "simulate",
]
