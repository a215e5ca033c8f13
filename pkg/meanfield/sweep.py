"""Temperature sweep sigma -> 0 toward a mean field equilibrium."""

from typing import Optional

from core.errors import NumericalError
from core.logging import get_logger
from games.instance import GameInstance
from meanfield.fixed_point import Initial, invariant_fixed_point
from meanfield.residual import SearchGrid, mfe_residual
from measures.wasserstein import wasserstein_1d
from schemas.config import GridSpec
from schemas.equilibria import InvariantMeasureResult, MfeResult, SigmaSweepResult

logger = get_logger(__name__)


def mfe_sigma_sweep(
    instance: GameInstance,
    sigmas: list[float],
    grid: Optional[GridSpec] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    damping: Optional[float] = None,
    warm_start: bool = True,
    search_grid: Optional[SearchGrid] = None,
    init: Initial = "gaussian",
) -> SigmaSweepResult:
    """
    Solve for m^sigma along a strictly decreasing sigma list.

    Each solve starts from the last converged measure when `warm_start` is
    set. A failing sigma is recorded in `failures` and the sweep moves on.
    The smallest-sigma measure that converged is the MFE candidate.
    """
    grid = grid or GridSpec.from_settings()
    results: list[Optional[InvariantMeasureResult]] = []
    failures: dict[int, str] = {}
    start: Initial = init

    for idx, sigma in enumerate(sigmas):
        try:
            res = invariant_fixed_point(
                instance.with_sigma(sigma),
                grid=grid,
                tol=tol,
                max_iter=max_iter,
                damping=damping,
                init=start,
            )
        except NumericalError as exc:
            logger.warning("sweep_sigma_failed", sigma=sigma, error=str(exc))
            failures[idx] = str(exc)
            results.append(None)
            continue
        results.append(res)
        if warm_start:
            start = res.measure

    consecutive: list[Optional[float]] = [None]
    for prev, cur in zip(results, results[1:]):
        consecutive.append(wasserstein_1d(prev.measure, cur.measure) if prev and cur else None)

    converged = [r for r in results if r is not None]
    candidate = None
    to_smallest: list[Optional[float]] = [None] * len(results)
    if converged:
        smallest = converged[-1]
        to_smallest = [wasserstein_1d(r.measure, smallest.measure) if r else None for r in results]
        gap = mfe_residual(instance.cost, smallest.measure, search_grid if search_grid is not None else grid)
        candidate = MfeResult(measure=smallest.measure, gap=gap, source="sigma-sweep")
        logger.info("sweep_done", cost=instance.cost.name, smallest_sigma=smallest.sigma, gap=gap)
    else:
        logger.error("sweep_no_convergence", cost=instance.cost.name, sigmas=sigmas)

    return SigmaSweepResult(
        sigmas=list(sigmas),
        results=results,
        failures=failures,
        w2_consecutive=consecutive,
        w2_to_smallest=to_smallest,
        candidate=candidate,
    )


def analytic_candidate(instance: GameInstance, search_grid: SearchGrid) -> Optional[MfeResult]:
    """MFE from the cost's closed form, when it declares one."""
    m0 = instance.cost.analytic_mfe()
    if m0 is None:
        return None
    return MfeResult(measure=m0, gap=mfe_residual(instance.cost, m0, search_grid), source="analytic")
