"""Moments and seeded sampling."""

import numpy as np

from core.errors import MeasureError
from measures.base import BaseMeasure
from measures.discrete import DiscreteMeasure, EmpiricalMeasure
from measures.grid import GridMeasure1D
from measures.quantiles import quantile_segments

SUPPORTED_MOMENTS = (1, 2, 4)


def moment(m: BaseMeasure, k: int) -> float:
    """int |x|^k dm for k in {1, 2, 4}."""
    if k not in SUPPORTED_MOMENTS:
        raise MeasureError(f"moment order must be one of {SUPPORTED_MOMENTS}, got {k}")
    return m.abs_moment(k)


def sample(m: BaseMeasure, n: int, seed: int) -> EmpiricalMeasure:
    """Draw n i.i.d. points by inversion of the CDF; deterministic given seed."""
    if n < 1:
        raise MeasureError(f"sample size must be positive, got {n}")
    u = np.random.default_rng(seed).random(n)
    if isinstance(m, GridMeasure1D):
        return EmpiricalMeasure(points=quantile_segments(m).at(u)[:, None])
    if isinstance(m, DiscreteMeasure):
        cdf = np.cumsum(m.masses)
        idx = np.minimum(np.searchsorted(cdf, u, side="right"), m.size - 1)
        return EmpiricalMeasure(points=m.points[idx])
    raise MeasureError(f"cannot sample from {type(m).__name__}")
