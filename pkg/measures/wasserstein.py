"""Exact Wasserstein distances.

`wasserstein_1d` integrates |Q1(u) - Q2(u)|^p over the merged quantile
breakpoints, so it is exact for atoms of any weights and for grid densities
read as piecewise-constant cells. `wasserstein_exact` solves the optimal
assignment between two equal-size empirical clouds in any dimension.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from core.errors import MeasureError
from measures.base import BaseMeasure
from measures.discrete import DiscreteMeasure
from measures.quantiles import quantile_segments

EXACT_MAX_ATOMS = 64


def _check_order(p: float) -> float:
    p = float(p)
    if not p >= 1.0:
        raise MeasureError(f"Wasserstein order must be >= 1, got {p}")
    return p


def _segment_integral(d0: np.ndarray, d1: np.ndarray, h: np.ndarray, p: float) -> np.ndarray:
    """Integral of |D|^p over segments where D is linear from d0 to d1."""
    a0, a1 = np.abs(d0), np.abs(d1)
    out = np.zeros_like(h)

    crossing = (d0 * d1) < 0
    if np.any(crossing):
        b0, b1 = a0[crossing], a1[crossing]
        t = b0 / (b0 + b1)
        out[crossing] = h[crossing] * (t * b0**p + (1.0 - t) * b1**p) / (p + 1.0)

    same = ~crossing
    hi = np.maximum(a0, a1)[same]
    lo = np.minimum(a0, a1)[same]
    seg = np.zeros_like(hi)
    pos = hi > 0
    r = lo[pos] / hi[pos]
    # (hi^(p+1) - lo^(p+1)) / ((p+1)(hi - lo)) written in the ratio r = lo / hi
    ratio = np.full_like(r, p + 1.0)
    mid = (r > 0) & (r < 1)
    log_r = np.log(r[mid])
    ratio[mid] = np.expm1((p + 1.0) * log_r) / np.expm1(log_r)
    ratio[r == 0] = 1.0
    seg[pos] = hi[pos] ** p * ratio / (p + 1.0)
    out[same] = h[same] * seg
    return out


def wasserstein_1d(m: BaseMeasure, m2: BaseMeasure, p: float = 2.0) -> float:
    """W_p between two 1-D measures (atoms, grids or one of each)."""
    p = _check_order(p)
    if m.dim != 1 or m2.dim != 1:
        raise MeasureError(f"wasserstein_1d needs 1-D measures, got d={m.dim} and d={m2.dim}")
    q1 = quantile_segments(m)
    q2 = quantile_segments(m2)

    breaks = np.union1d(q1.breaks, q2.breaks)
    a, b = breaks[:-1], breaks[1:]
    h = b - a
    d0 = q1.at(a) - q2.at(a)
    d1 = q1.at(b, from_left=True) - q2.at(b, from_left=True)
    total = float(np.sum(_segment_integral(d0, d1, h, p)))
    return max(total, 0.0) ** (1.0 / p)


def _uniform_points(m: BaseMeasure) -> np.ndarray:
    if not isinstance(m, DiscreteMeasure):
        raise MeasureError("exact assignment needs finitely supported measures")
    if not np.allclose(m.masses, 1.0 / m.size, rtol=0, atol=1e-12):
        raise MeasureError("exact assignment needs uniform weights")
    return m.points


def wasserstein_exact(m: DiscreteMeasure, m2: DiscreteMeasure, p: float = 2.0) -> float:
    """W_p between equal-size uniform clouds via optimal assignment."""
    p = _check_order(p)
    x, y = _uniform_points(m), _uniform_points(m2)
    if x.shape[0] != y.shape[0]:
        raise MeasureError(f"wasserstein_exact needs equal sizes, got {x.shape[0]} and {y.shape[0]}")
    if x.shape[0] > EXACT_MAX_ATOMS:
        raise MeasureError(f"wasserstein_exact is limited to {EXACT_MAX_ATOMS} atoms")
    if x.shape[1] != y.shape[1]:
        raise MeasureError("measures live in different dimensions")
    cost = cdist(x, y) ** p
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].mean()) ** (1.0 / p)


def wasserstein(m: BaseMeasure, m2: BaseMeasure, p: float = 2.0) -> float:
    """Dispatch to the exact 1-D formula when possible, else to the assignment."""
    if m.dim == 1 and m2.dim == 1:
        return wasserstein_1d(m, m2, p)
    return wasserstein_exact(m, m2, p)
