"""Invariant measure m^sigma as the fixed point of the Gibbs map on a 1-D grid."""

from typing import Literal, Optional, Union

import numpy as np

from core.config import get_settings
from core.errors import BoundaryMassError, ConfigError, FixedPointError
from core.logging import get_logger
from games.instance import GameInstance
from measures.grid import BOUNDARY_RATIO_LIMIT, GridMeasure1D, log_trapezoid
from schemas.config import GridSpec
from schemas.equilibria import InvariantMeasureResult

logger = get_logger(__name__)

Initial = Union[Literal["gaussian", "uniform"], GridMeasure1D]


def initial_measure(grid: GridSpec, init: Initial = "gaussian") -> GridMeasure1D:
    if isinstance(init, GridMeasure1D):
        if (init.lo, init.hi, init.n_nodes) != (grid.lo, grid.hi, grid.nodes):
            raise ConfigError("initial measure lives on a different grid")
        return init
    if init == "uniform":
        return GridMeasure1D.uniform(grid.lo, grid.hi, grid.nodes)
    if init == "gaussian":
        return GridMeasure1D.gaussian(grid.lo, grid.hi, grid.nodes)
    raise ConfigError(f"unknown initialization {init!r}")


def gibbs_map(instance: GameInstance, m: GridMeasure1D) -> tuple[GridMeasure1D, float]:
    """G(m) proportional to exp(-F(x, m)/sigma - U(x)) on the nodes of m, with log Z."""
    nodes = m.nodes[:, None]
    log_density = -instance.cost.value(nodes, m) / instance.sigma - instance.potential.value(nodes)
    if not np.all(np.isfinite(log_density)):
        raise FixedPointError(iterations=0, residual=float("inf"), sigma=instance.sigma)
    log_z = log_trapezoid(log_density, m.step)
    return GridMeasure1D.normalized(m.lo, m.hi, np.exp(log_density - log_z)), log_z


def _is_fixed(instance: GameInstance, m: GridMeasure1D, tol: float) -> bool:
    g, _ = gibbs_map(instance, m)
    return float(np.max(np.abs(g.density - m.density))) <= tol


def invariant_fixed_point(
    instance: GameInstance,
    grid: Optional[GridSpec] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    damping: Optional[float] = None,
    init: Initial = "gaussian",
) -> InvariantMeasureResult:
    """
    Damped iteration m <- (1 - lambda) m + lambda G(m).

    Stops at the first iterate whose self-consistency residual
    sup|G(m_k) - m_k| is within `tol`; `iterations` counts applied updates.
    When G(m_0) is itself a fixed point (e.g. F does not depend on m) the
    first update is taken undamped, so such cases converge in one iteration.

    Raises:
        FixedPointError: no convergence within `max_iter` updates
        BoundaryMassError: the converged density does not vanish at the grid ends
    """
    if instance.dim != 1:
        raise ConfigError(f"grid solver is one-dimensional, got d={instance.dim}")
    settings = get_settings()
    grid = grid or GridSpec.from_settings()
    tol = tol if tol is not None else settings.fixed_point_tol
    max_iter = max_iter if max_iter is not None else settings.fixed_point_max_iter
    damping = damping if damping is not None else settings.fixed_point_damping
    if not 0 < damping <= 1:
        raise ConfigError(f"damping must lie in (0, 1], got {damping}")

    m = initial_measure(grid, init)
    residual = float("inf")
    for k in range(max_iter + 1):
        g, log_z = gibbs_map(instance, m)
        residual = float(np.max(np.abs(g.density - m.density)))
        if residual <= tol:
            ratio = m.boundary_ratio()
            if ratio > BOUNDARY_RATIO_LIMIT:
                logger.error("boundary_mass", sigma=instance.sigma, ratio=ratio, lo=grid.lo, hi=grid.hi)
                raise BoundaryMassError(ratio=ratio, threshold=BOUNDARY_RATIO_LIMIT)
            logger.info(
                "fixed_point_converged",
                cost=instance.cost.name,
                sigma=instance.sigma,
                iterations=k,
                residual=residual,
            )
            return InvariantMeasureResult(
                measure=m,
                log_normalizer=log_z,
                iterations=k,
                residual=residual,
                sigma=instance.sigma,
                boundary_ratio=ratio,
            )
        if k == max_iter:
            break
        if k == 0 and damping < 1.0 and _is_fixed(instance, g, tol):
            # G(m_0) is already self-consistent: take the full step
            m = g
            continue
        m = GridMeasure1D.normalized(m.lo, m.hi, (1.0 - damping) * m.density + damping * g.density)

    logger.warning("fixed_point_failed", sigma=instance.sigma, iterations=max_iter, residual=residual)
    raise FixedPointError(iterations=max_iter, residual=residual, sigma=instance.sigma)
