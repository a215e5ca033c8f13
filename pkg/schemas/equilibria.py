"""Results of fixed-point, sweep and Nash computations."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from measures.base import BaseMeasure
from measures.discrete import EmpiricalMeasure
from measures.grid import GridMeasure1D


class InvariantMeasureResult(BaseModel):
    """Fixed point m^sigma of the Gibbs map with log Z^sigma and diagnostics."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    measure: GridMeasure1D
    log_normalizer: float
    iterations: int = Field(ge=0)
    residual: float = Field(ge=0)
    sigma: float = Field(gt=0)
    boundary_ratio: float = 0.0


class MfeResult(BaseModel):
    """Mean field equilibrium candidate with its support-condition gap."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    measure: BaseMeasure
    gap: float = Field(ge=0)
    source: Literal["sigma-sweep", "analytic"]


class SigmaSweepResult(BaseModel):
    """Fixed points along a decreasing temperature list."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    sigmas: list[float]
    results: list[Optional[InvariantMeasureResult]]
    failures: dict[int, str] = Field(default_factory=dict)
    w2_consecutive: list[Optional[float]] = Field(default_factory=list)
    w2_to_smallest: list[Optional[float]] = Field(default_factory=list)
    candidate: Optional[MfeResult] = None

    @model_validator(mode="after")
    def check_sigmas(self) -> "SigmaSweepResult":
        if any(s <= 0 for s in self.sigmas) or any(b >= a for a, b in zip(self.sigmas, self.sigmas[1:])):
            raise ValueError("sigmas must be positive and strictly decreasing")
        if len(self.results) != len(self.sigmas):
            raise ValueError("one result slot per sigma")
        return self

    @property
    def measures(self) -> list[Optional[InvariantMeasureResult]]:
        return self.results


class EpsilonNashResult(BaseModel):
    """Best-response gap of an i.i.d. sample from an MFE, and the sup-form bound."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    seed: int
    epsilon: float = Field(ge=0)
    sup_bound: float
    support_slack: float = Field(default=0.0, ge=0)
    per_player: list[float]
    profile: EmpiricalMeasure

    @property
    def bound_holds(self) -> bool:
        return self.epsilon <= self.sup_bound + 1e-12


class BestResponseGap(BaseModel):
    per_player: list[float]
    best_actions: list[list[float]]

    @property
    def max_gap(self) -> float:
        return max(self.per_player)
