"""Recorded statistics, particle snapshots and rate fits."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# =============================================================================
# Time Series
# =============================================================================


class StatSeries(BaseModel):
    """One statistic recorded at strictly increasing times."""

    model_config = ConfigDict(frozen=True)

    label: str
    times: list[float]
    values: list[float]

    @model_validator(mode="after")
    def check_lengths(self) -> "StatSeries":
        if len(self.times) != len(self.values):
            raise ValueError(f"{len(self.times)} times for {len(self.values)} values")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")
        return self

    @classmethod
    def from_arrays(cls, label: str, times: Any, values: Any) -> "StatSeries":
        return cls(
            label=label,
            times=[float(t) for t in np.asarray(times).reshape(-1)],
            values=[float(v) for v in np.asarray(values).reshape(-1)],
        )

    @property
    def t(self) -> np.ndarray:
        return np.asarray(self.times, dtype=float)

    @property
    def v(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def window(self, t_lo: float, t_hi: float) -> "StatSeries":
        t = self.t
        keep = (t >= t_lo) & (t <= t_hi)
        return StatSeries.from_arrays(self.label, t[keep], self.v[keep])

    def scaled(self, factor: float, label: str | None = None) -> "StatSeries":
        return StatSeries.from_arrays(label or self.label, self.t, factor * self.v)


class ParticleState(BaseModel):
    """Positions (N, d) of one particle system at a time."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    positions: np.ndarray
    time: float = Field(default=0.0, ge=0)

    @field_validator("positions", mode="before")
    @classmethod
    def parse_positions(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError(f"positions must have shape (N, d), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("positions must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        return arr

    @property
    def n(self) -> int:
        return int(self.positions.shape[0])

    @property
    def dim(self) -> int:
        return int(self.positions.shape[1])


# =============================================================================
# Fits
# =============================================================================


class RateFit(BaseModel):
    """Least-squares line through (t, log value)."""

    slope: float
    intercept: float
    r_squared: float = Field(ge=0.0, le=1.0)
    window: tuple[float, float]
    stderr: float = 0.0

    @property
    def rate(self) -> float:
        """Decay exponent, -slope."""
        return -self.slope
