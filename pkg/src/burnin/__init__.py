"""Burn-in length calibration for two-arm response-adaptive randomized trials."""

__version__ = "0.1.0"

from burnin.rng import RngStream
from burnin.trial import BurnInPlan, TrialPath, TrialScenario, make_burnin_schedule, simulate_trial
from burnin.designs import AllocationTarget, DesignSpec, UrnState, make_design
from burnin.metrics import (
    MetricReport,
    burnin_budget,
    final_allocation_error,
    geometric_slope,
    reactiveness_global,
    reactiveness_scenario,
    recommend_burnin,
    standardized_effect,
)
from burnin.inference import OperatingCharacteristics, TestResult, score_z, wald_z

__all__ = [
    "AllocationTarget",
    "BurnInPlan",
    "DesignSpec",
    "MetricReport",
    "OperatingCharacteristics",
    "RngStream",
    "TestResult",
    "TrialPath",
    "TrialScenario",
    "UrnState",
    "burnin_budget",
    "final_allocation_error",
    "geometric_slope",
    "make_burnin_schedule",
    "make_design",
    "reactiveness_global",
    "reactiveness_scenario",
    "recommend_burnin",
    "score_z",
    "simulate_trial",
    "standardized_effect",
    "wald_z",
]
