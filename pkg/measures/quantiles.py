"""Quantile functions of 1-D measures as piecewise-linear segments.

A quantile function is stored as breakpoints 0 = u_0 < ... < u_K = 1 and,
for every segment, the values at its left and right ends. Atoms give flat
segments (step quantiles); grid densities, read as piecewise-constant
density cells, give linear segments.
"""

from typing import NamedTuple

import numpy as np

from core.errors import MeasureError
from measures.base import BaseMeasure
from measures.discrete import DiscreteMeasure
from measures.grid import GridMeasure1D


class QuantileSegments(NamedTuple):
    breaks: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def at(self, u: np.ndarray, from_left: bool = False) -> np.ndarray:
        """Evaluate Q at levels u; `from_left` takes the left limit at breakpoints."""
        side = "left" if from_left else "right"
        k = np.searchsorted(self.breaks, u, side=side) - 1
        k = np.clip(k, 0, len(self.left) - 1)
        lo, hi = self.breaks[k], self.breaks[k + 1]
        frac = np.clip((u - lo) / (hi - lo), 0.0, 1.0)
        return self.left[k] + (self.right[k] - self.left[k]) * frac


def quantile_segments(m: BaseMeasure) -> QuantileSegments:
    if m.dim != 1:
        raise MeasureError(f"quantile functions need a 1-D measure, got d={m.dim}")
    if isinstance(m, GridMeasure1D):
        return _grid_segments(m)
    if isinstance(m, DiscreteMeasure):
        return _atom_segments(m)
    raise MeasureError(f"unsupported measure type {type(m).__name__}")


def _atom_segments(m: DiscreteMeasure) -> QuantileSegments:
    order = np.argsort(m.points[:, 0], kind="stable")
    values = m.points[order, 0]
    masses = m.masses[order]
    keep = masses > 0
    values, masses = values[keep], masses[keep]
    breaks = np.concatenate([[0.0], np.cumsum(masses)])
    breaks[-1] = 1.0
    return QuantileSegments(breaks=breaks, left=values, right=values)


def _grid_segments(m: GridMeasure1D) -> QuantileSegments:
    cdf = m.cdf_at_nodes()
    nodes = m.nodes
    keep = cdf[1:] > cdf[:-1]
    breaks = np.concatenate([cdf[:-1][keep], [1.0]])
    return QuantileSegments(breaks=breaks, left=nodes[:-1][keep], right=nodes[1:][keep])
