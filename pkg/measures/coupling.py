"""Couplings between two finitely supported measures."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from core.errors import MeasureError
from measures.base import as_points, freeze
from measures.discrete import DiscreteMeasure

MARGINAL_TOLERANCE = 1e-12


class Coupling(BaseModel):
    """Transport plan pi = sum_ij mass[i, j] * delta_(rows[i], cols[j])."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    rows: np.ndarray
    cols: np.ndarray
    mass: np.ndarray

    @field_validator("rows", "cols", mode="before")
    @classmethod
    def parse_points(cls, v: Any) -> np.ndarray:
        return freeze(as_points(v))

    @field_validator("mass", mode="before")
    @classmethod
    def parse_mass(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        if arr.ndim != 2:
            raise MeasureError("coupling mass must be a matrix")
        if np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise MeasureError("coupling mass must be finite and non-negative")
        return freeze(arr)

    @model_validator(mode="after")
    def check_shapes(self) -> "Coupling":
        if self.mass.shape != (self.rows.shape[0], self.cols.shape[0]):
            raise MeasureError(
                f"mass shape {self.mass.shape} does not match "
                f"{self.rows.shape[0]} x {self.cols.shape[0]} supports"
            )
        if self.rows.shape[1] != self.cols.shape[1]:
            raise MeasureError("coupled supports live in different dimensions")
        return self

    # -- marginals --------------------------------------------------------

    def total_mass(self) -> float:
        return float(self.mass.sum())

    def validate_marginals(self, tol: float = MARGINAL_TOLERANCE) -> None:
        """Both marginals must be probability vectors within `tol`."""
        for name, marginal in (("first", self.mass.sum(axis=1)), ("second", self.mass.sum(axis=0))):
            total = float(marginal.sum())
            if abs(total - 1.0) > tol:
                raise MeasureError(f"{name} marginal has total mass {total!r}", total=total)

    def first_marginal(self) -> DiscreteMeasure:
        return DiscreteMeasure(points=self.rows, masses=self.mass.sum(axis=1))

    def second_marginal(self) -> DiscreteMeasure:
        return DiscreteMeasure(points=self.cols, masses=self.mass.sum(axis=0))

    def squared_displacement(self) -> float:
        """Integral of |x - x'|^2 against the plan."""
        diff = self.rows[:, None, :] - self.cols[None, :, :]
        return float(np.sum(self.mass * np.sum(diff**2, axis=-1)))

    # -- constructors -----------------------------------------------------

    @classmethod
    def independent(cls, m: DiscreteMeasure, m2: DiscreteMeasure) -> "Coupling":
        return cls(rows=m.points, cols=m2.points, mass=np.outer(m.masses, m2.masses))

    @classmethod
    def diagonal(cls, m: DiscreteMeasure) -> "Coupling":
        return cls(rows=m.points, cols=m.points, mass=np.diag(m.masses))

    @classmethod
    def from_permutation(cls, m: DiscreteMeasure, m2: DiscreteMeasure, perm: Any) -> "Coupling":
        """Match atom i of m with atom perm[i] of m2 (uniform, equal sizes)."""
        perm = np.asarray(perm, dtype=int)
        n = m.size
        if m2.size != n or sorted(perm.tolist()) != list(range(n)):
            raise MeasureError("a permutation coupling needs equal sizes and a permutation")
        mass = np.zeros((n, n))
        mass[np.arange(n), perm] = m.masses
        if not np.allclose(m.masses, m2.masses[perm], rtol=0, atol=MARGINAL_TOLERANCE):
            raise MeasureError("permutation coupling requires matching masses")
        return cls(rows=m.points, cols=m2.points, mass=mass)

    @classmethod
    def comonotone(cls, m: DiscreteMeasure, m2: DiscreteMeasure) -> "Coupling":
        """Quantile (sorted) coupling; in d > 1 atoms are ordered by their first coordinate."""
        return cls._monotone(m, m2, reverse=False)

    @classmethod
    def antimonotone(cls, m: DiscreteMeasure, m2: DiscreteMeasure) -> "Coupling":
        return cls._monotone(m, m2, reverse=True)

    @classmethod
    def _monotone(cls, m: DiscreteMeasure, m2: DiscreteMeasure, reverse: bool) -> "Coupling":
        order1 = np.argsort(m.points[:, 0], kind="stable")
        order2 = np.argsort(m2.points[:, 0], kind="stable")
        if reverse:
            order2 = order2[::-1]
        a = m.masses[order1].copy()
        b = m2.masses[order2].copy()
        mass = np.zeros((m.size, m2.size))
        # north-west corner rule on the sorted marginals
        i = j = 0
        while i < len(a) and j < len(b):
            moved = min(a[i], b[j])
            mass[order1[i], order2[j]] += moved
            a[i] -= moved
            b[j] -= moved
            if a[i] <= MARGINAL_TOLERANCE * 1e-3:
                i += 1
            if j < len(b) and b[j] <= MARGINAL_TOLERANCE * 1e-3:
                j += 1
        return cls(rows=m.points, cols=m2.points, mass=mass)
