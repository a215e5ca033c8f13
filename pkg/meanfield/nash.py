"""Approximate Nash certificates: sampled MFE profiles and finite-game best responses."""

from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from core.errors import ConfigError
from core.logging import get_logger
from games.base import MeanFieldCost
from games.finite import FinitePlayerGame
from meanfield.residual import SearchGrid, search_points
from measures.base import BaseMeasure
from measures.discrete import EmpiricalMeasure
from measures.statistics import sample
from schemas.equilibria import BestResponseGap, EpsilonNashResult

logger = get_logger(__name__)


def _refine(cost: MeanFieldCost, others: EmpiricalMeasure, grid: np.ndarray, g: int) -> tuple[float, float]:
    """Bounded scalar minimization of F(., others) around grid point g; returns (y*, F(y*))."""
    lo = grid[max(g - 1, 0), 0]
    hi = grid[min(g + 1, len(grid) - 1), 0]
    res = minimize_scalar(
        lambda y: float(cost.value(np.array([[y]]), others)[0]),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-10},
    )
    return float(res.x), float(res.fun)


def epsilon_nash_from_mfe(
    m0: BaseMeasure,
    cost: MeanFieldCost,
    n: int,
    seed: int,
    search_grid: SearchGrid,
    refine: bool = False,
) -> EpsilonNashResult:
    """
    Sample X^1..X^N i.i.d. from m0 and measure how far the profile is from Nash.

    `epsilon` is the direct best-response gap
    max_i sup_y [F(X^i, mu^{N-1}_{-i}) - F(y, mu^{N-1}_{-i})]^+ over the search grid.
    `sup_bound` is sup_x D_i(x) + sup_y (-D_i(y)) with D_i = F(., mu^{N-1}_{-i}) - F(., m0),
    evaluated on the grid and the sampled points, plus the sample's own
    residual F(X^i, m0) - min F(., m0) as `support_slack` (zero when X^i
    minimizes F(., m0)). `epsilon <= sup_bound` holds in every run.
    """
    if n < 2:
        raise ConfigError(f"epsilon-Nash needs N >= 2 players, got {n}")
    profile = sample(m0, n, seed)
    x = profile.points
    grid = search_points(search_grid, cost.dim)

    deviations = cost.value_loo_at(x, grid)  # (N, G)
    own = cost.value_loo(x)[0]  # (N,)
    grid_m0 = cost.value(grid, m0)
    own_m0 = cost.value(x, m0)

    best = deviations.min(axis=1)
    best_m0 = np.broadcast_to(grid_m0.min(), (n,)).copy()
    extra_d = np.full(n, -np.inf)  # D_i at a refined minimizer
    if refine:
        if cost.dim != 1:
            raise ConfigError("refinement is one-dimensional")
        for i in range(n):
            g = int(np.argmin(deviations[i]))
            others = EmpiricalMeasure(points=np.delete(x, i, axis=0))
            y_star, f_star = _refine(cost, others, grid, g)
            if f_star < best[i]:
                best[i] = f_star
                f_m0 = float(cost.value(np.array([[y_star]]), m0)[0])
                best_m0[i] = min(best_m0[i], f_m0)
                extra_d[i] = f_star - f_m0

    per_player = np.maximum(own - best, 0.0)

    d_grid = deviations - grid_m0[None, :]  # (N, G)
    d_own = own - own_m0
    sup_d = np.maximum(d_grid.max(axis=1), d_own)
    sup_neg_d = np.maximum(np.maximum((-d_grid).max(axis=1), -d_own), -extra_d)
    slack = np.maximum(own_m0 - np.minimum(best_m0, own_m0), 0.0)
    bound = sup_d + sup_neg_d + slack

    result = EpsilonNashResult(
        n=n,
        seed=seed,
        epsilon=float(per_player.max()),
        sup_bound=float(bound.max()),
        support_slack=float(slack.max()),
        per_player=per_player.tolist(),
        profile=profile,
    )
    logger.debug("epsilon_nash", cost=cost.name, n=n, seed=seed, epsilon=result.epsilon, bound=result.sup_bound)
    return result


def best_response_gap(
    game: FinitePlayerGame,
    x: np.ndarray,
    search_grid: SearchGrid,
    players: Optional[list[int]] = None,
) -> BestResponseGap:
    """eps_i = [F_i(x) - min_y F_i(y, x^-i)]^+ over the search grid, with the minimizing y."""
    x = game.profile(x)
    actions = search_points(search_grid, game.dim)
    players = players if players is not None else list(range(game.n_players))
    gaps, best_actions = [], []
    for i in players:
        costs = game.deviation_costs(i, x, actions)
        g = int(np.argmin(costs))
        gaps.append(max(game.cost(i, x) - float(costs[g]), 0.0))
        best_actions.append(actions[g].tolist())
    return BestResponseGap(per_player=gaps, best_actions=best_actions)
