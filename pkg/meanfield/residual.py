"""Support condition of a mean field equilibrium: supp(m) inside argmin F(., m)."""

from typing import Union

import numpy as np

from games.base import MeanFieldCost
from measures.base import BaseMeasure
from measures.discrete import DiscreteMeasure
from measures.grid import GridMeasure1D
from schemas.config import GridSpec

SUPPORT_THRESHOLD = 1e-6

SearchGrid = Union[GridSpec, np.ndarray]


def search_points(search_grid: SearchGrid, dim: int) -> np.ndarray:
    """Candidate actions as a (G, d) array."""
    if isinstance(search_grid, GridSpec):
        pts = search_grid.points
    else:
        pts = np.asarray(search_grid, dtype=float)
    return pts.reshape(-1, dim)


def support_points(m: BaseMeasure) -> np.ndarray:
    """Atoms of positive mass, or grid nodes carrying more than SUPPORT_THRESHOLD of the mass."""
    if isinstance(m, GridMeasure1D):
        return m.support[m.weights > SUPPORT_THRESHOLD * m.mass()]
    if isinstance(m, DiscreteMeasure):
        return m.points[m.masses > 0]
    return m.support[m.weights > 0]


def mfe_residual(cost: MeanFieldCost, m: BaseMeasure, search_grid: SearchGrid) -> float:
    """sup of F(., m) over supp(m) minus its minimum over the search grid and the support."""
    support = support_points(m)
    on_support = cost.value(support, m)
    on_grid = cost.value(search_points(search_grid, cost.dim), m)
    low = min(float(on_grid.min()), float(on_support.min()))
    return max(float(on_support.max()) - low, 0.0)
