"""Finitely supported measures: weighted atoms and empirical clouds."""

from typing import Any, Optional

import numpy as np
from pydantic import field_validator, model_validator

from core.errors import MeasureError
from measures.base import BaseMeasure, as_points, freeze

MASS_TOLERANCE = 1e-9


class DiscreteMeasure(BaseMeasure):
    """Weighted atoms sum_k masses[k] * delta_{points[k]}."""

    points: np.ndarray
    masses: Optional[np.ndarray] = None

    @field_validator("points", mode="before")
    @classmethod
    def parse_points(cls, v: Any) -> np.ndarray:
        try:
            arr = as_points(v)
        except ValueError as e:
            raise MeasureError(str(e)) from e
        if arr.shape[0] == 0:
            raise MeasureError("a measure needs at least one atom")
        if not np.all(np.isfinite(arr)):
            raise MeasureError("atoms must be finite")
        return freeze(arr)

    @field_validator("masses", mode="before")
    @classmethod
    def parse_masses(cls, v: Any) -> Optional[np.ndarray]:
        if v is None:
            return None
        arr = np.asarray(v, dtype=float).reshape(-1)
        if np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise MeasureError("masses must be finite and non-negative")
        total = arr.sum()
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise MeasureError(f"masses sum to {total!r}, expected 1")
        return freeze(arr / total)

    @model_validator(mode="after")
    def fill_masses(self) -> "DiscreteMeasure":
        n = self.points.shape[0]
        if self.masses is None:
            object.__setattr__(self, "masses", freeze(np.full(n, 1.0 / n)))
        elif self.masses.shape[0] != n:
            raise MeasureError(f"{self.masses.shape[0]} masses for {n} atoms")
        return self

    @property
    def support(self) -> np.ndarray:
        return self.points

    @property
    def weights(self) -> np.ndarray:
        return self.masses

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    @classmethod
    def dirac(cls, point: Any) -> "DiscreteMeasure":
        return cls(points=np.atleast_1d(np.asarray(point, dtype=float)).reshape(1, -1))


class EmpiricalMeasure(DiscreteMeasure):
    """Uniform atomic measure (1/N) sum_i delta_{x_i} of a particle cloud."""

    @model_validator(mode="after")
    def check_uniform(self) -> "EmpiricalMeasure":
        n = self.points.shape[0]
        if self.masses is not None and not np.allclose(self.masses, 1.0 / n, rtol=0, atol=1e-15):
            raise MeasureError("empirical measures carry uniform weights")
        return self

    def leave_one_out(self, i: int) -> "EmpiricalMeasure":
        """The measure of the other N-1 particles."""
        if self.size < 2:
            raise MeasureError("leave-one-out needs at least two particles")
        return EmpiricalMeasure(points=np.delete(self.points, i, axis=0))
