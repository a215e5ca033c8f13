"""Schemas module exports."""

from schemas.config import GridSpec, RunConfig, SdeConfig
from schemas.equilibria import (
    BestResponseGap,
    EpsilonNashResult,
    InvariantMeasureResult,
    MfeResult,
    SigmaSweepResult,
)
from schemas.reports import CheckResult, ExperimentReport
from schemas.series import ParticleState, RateFit, StatSeries

__all__ = [
    # Configs
    "GridSpec",
    "RunConfig",
    "SdeConfig",
    # Equilibria
    "BestResponseGap",
    "EpsilonNashResult",
    "InvariantMeasureResult",
    "MfeResult",
    "SigmaSweepResult",
    # Reports
    "CheckResult",
    "ExperimentReport",
    # Series
    "ParticleState",
    "RateFit",
    "StatSeries",
]
