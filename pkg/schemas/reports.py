"""Experiment reports whose verdict is recomputable from stored numbers."""

import operator
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, Field, field_validator

Comparator = Literal["<=", ">=", "<", ">"]

_COMPARE = {
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
}


class CheckResult(BaseModel):
    """One pass/fail criterion: `value comparator threshold`."""

    name: str
    value: float
    threshold: float
    comparator: Comparator
    passed: bool

    @classmethod
    def evaluate(cls, name: str, value: float, comparator: Comparator, threshold: float) -> "CheckResult":
        value, threshold = float(value), float(threshold)
        return cls(
            name=name,
            value=value,
            threshold=threshold,
            comparator=comparator,
            passed=bool(_COMPARE[comparator](value, threshold)),
        )

    def recompute(self) -> bool:
        return bool(_COMPARE[self.comparator](self.value, self.threshold))


def to_native(obj: Any) -> Any:
    """numpy scalars, arrays and tuples to JSON-native Python values."""
    if isinstance(obj, dict):
        return {str(k): to_native(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_native(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_native(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


class ExperimentReport(BaseModel):
    """Self-contained record of one experiment."""

    name: str
    game: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    measurements: dict[str, Any] = Field(default_factory=dict)
    bounds: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckResult] = Field(default_factory=list)
    verdict: Literal["pass", "fail"] = "fail"
    degenerate: bool = False
    notes: list[str] = Field(default_factory=list)

    @field_validator("parameters", "measurements", "bounds", mode="before")
    @classmethod
    def native_values(cls, v: Any) -> Any:
        return to_native(v)

    @classmethod
    def from_checks(cls, **fields: Any) -> "ExperimentReport":
        report = cls(**fields)
        report.verdict = report.recompute_verdict()
        return report

    def recompute_verdict(self) -> Literal["pass", "fail"]:
        """Pass iff every stored check still holds on its stored numbers."""
        return "pass" if all(check.recompute() for check in self.checks) else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"
