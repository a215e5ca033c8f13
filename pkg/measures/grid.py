"""Densities on a uniform 1-D grid."""

from typing import Any, Callable

import numpy as np
from pydantic import field_validator, model_validator
from scipy.special import logsumexp

from core.errors import MeasureError
from measures.base import BaseMeasure, freeze

UNIT_MASS_TOLERANCE = 1e-10
BOUNDARY_RATIO_LIMIT = 1e-8


def trapezoid_weights(nodes: int, step: float) -> np.ndarray:
    w = np.full(nodes, step)
    w[0] = w[-1] = 0.5 * step
    return w


def log_trapezoid(log_values: np.ndarray, step: float) -> float:
    """log of the trapezoid integral of exp(log_values) over uniform nodes."""
    return float(logsumexp(log_values, b=trapezoid_weights(len(log_values), step)))


class GridMeasure1D(BaseMeasure):
    """Probability density sampled at M uniform nodes of [lo, hi].

    Mass is measured with the trapezoidal rule; `weights` are the density
    values times the trapezoid weights.
    """

    lo: float
    hi: float
    density: np.ndarray

    @field_validator("density", mode="before")
    @classmethod
    def parse_density(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=float).reshape(-1)
        if arr.shape[0] < 3:
            raise MeasureError("a grid needs at least three nodes")
        if np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise MeasureError("density must be finite and non-negative")
        return freeze(arr)

    @model_validator(mode="after")
    def check_mass(self) -> "GridMeasure1D":
        if not self.lo < self.hi:
            raise MeasureError(f"empty grid domain [{self.lo}, {self.hi}]")
        mass = float(self.density @ trapezoid_weights(self.n_nodes, self.step))
        if abs(mass - 1.0) > UNIT_MASS_TOLERANCE:
            raise MeasureError(f"grid density has mass {mass!r}; use GridMeasure1D.normalized")
        return self

    # -- construction -----------------------------------------------------

    @classmethod
    def normalized(cls, lo: float, hi: float, density: Any) -> "GridMeasure1D":
        """Renormalize a non-negative pointwise density to unit trapezoid mass."""
        arr = np.asarray(density, dtype=float).reshape(-1)
        step = (hi - lo) / (arr.shape[0] - 1)
        mass = float(arr @ trapezoid_weights(arr.shape[0], step))
        if not mass > 0 or not np.isfinite(mass):
            raise MeasureError("density has no mass on the grid")
        return cls(lo=lo, hi=hi, density=arr / mass)

    @classmethod
    def from_log_density(cls, lo: float, hi: float, log_density: Any) -> "GridMeasure1D":
        """Normalize exp(log_density) without overflow."""
        logd = np.asarray(log_density, dtype=float).reshape(-1)
        return cls.normalized(lo, hi, np.exp(logd - np.max(logd)))

    @classmethod
    def from_function(
        cls, lo: float, hi: float, nodes: int, fn: Callable[[np.ndarray], np.ndarray]
    ) -> "GridMeasure1D":
        return cls.normalized(lo, hi, fn(np.linspace(lo, hi, nodes)))

    @classmethod
    def gaussian(cls, lo: float, hi: float, nodes: int, mean: float = 0.0, var: float = 1.0) -> "GridMeasure1D":
        x = np.linspace(lo, hi, nodes)
        return cls.from_log_density(lo, hi, -((x - mean) ** 2) / (2.0 * var))

    @classmethod
    def uniform(cls, lo: float, hi: float, nodes: int) -> "GridMeasure1D":
        return cls.normalized(lo, hi, np.ones(nodes))

    # -- views ------------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return int(self.density.shape[0])

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.n_nodes - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n_nodes)

    @property
    def support(self) -> np.ndarray:
        return self.nodes[:, None]

    @property
    def weights(self) -> np.ndarray:
        return self.density * trapezoid_weights(self.n_nodes, self.step)

    def mass(self) -> float:
        return float(self.weights.sum())

    def same_grid(self, other: "GridMeasure1D") -> bool:
        return self.lo == other.lo and self.hi == other.hi and self.n_nodes == other.n_nodes

    def boundary_ratio(self) -> float:
        """Largest boundary density relative to the peak density."""
        peak = float(self.density.max())
        return max(self.density[0], self.density[-1]) / peak

    def cdf_at_nodes(self) -> np.ndarray:
        """Cumulative trapezoid mass; linear between nodes, ends at exactly 1."""
        cells = 0.5 * self.step * (self.density[:-1] + self.density[1:])
        cdf = np.concatenate([[0.0], np.cumsum(cells)])
        return cdf / cdf[-1]
