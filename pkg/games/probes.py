"""Randomized probes of monotonicity, dissipativity and gradient consistency.

Probes refute, they never certify: a clean report only says no witness was
found among the sampled measures and couplings.
"""

from typing import Optional

import numpy as np
from pydantic import BaseModel

from core.errors import MeasureError
from core.logging import get_logger
from games.base import MeanFieldCost
from games.finite import FinitePlayerGame
from games.potentials import Potential
from measures.base import BaseMeasure
from measures.coupling import MARGINAL_TOLERANCE, Coupling
from measures.discrete import DiscreteMeasure
from measures.grid import log_trapezoid

logger = get_logger(__name__)

MAX_ATOMS = 32
MAX_WITNESSES = 5
FD_STEP = 1e-5


class MonotonicityWitness(BaseModel):
    kind: str
    value: float
    coupling: Optional[str] = None
    points: list[list[float]]
    masses: list[float]
    points2: list[list[float]]
    masses2: list[float]


class MonotonicityReport(BaseModel):
    """Empirical minima of Gamma_LL and of the displacement ratios."""

    cost: str
    trials: int
    seed: int
    min_gamma_ll: float
    min_gamma_dm: float
    min_dm_ratio: float
    min_weak_dm_ratio: float
    ll_violations: int
    dm_violations: int
    declared_dm_constant: float
    declared_dm_refuted: bool
    ll_witnesses: list[MonotonicityWitness]
    dm_witnesses: list[MonotonicityWitness]


class DissipativityReport(BaseModel):
    cost: str
    samples: int
    passed: bool
    worst_margin: float
    witness_x: Optional[list[float]] = None


class GradientCheck(BaseModel):
    name: str
    samples: int
    max_rel_error: float
    tolerance: float
    passed: bool


class PotentialCheck(BaseModel):
    name: str
    normalization_error: Optional[float]
    max_rel_error: float
    tolerance: float
    passed: bool


# -- exact bilinear forms ----------------------------------------------------


def gamma_ll(cost: MeanFieldCost, m: BaseMeasure, m2: BaseMeasure) -> float:
    """int [F(x, m) - F(x, m2)] (m - m2)(dx) over the discrete supports."""
    on_m = cost.value(m.support, m) - cost.value(m.support, m2)
    on_m2 = cost.value(m2.support, m) - cost.value(m2.support, m2)
    return float(m.weights @ on_m - m2.weights @ on_m2)


def _dm_form(g1: np.ndarray, g2: np.ndarray, coupling: Coupling) -> float:
    diff_grad = g1[:, None, :] - g2[None, :, :]
    diff_x = coupling.rows[:, None, :] - coupling.cols[None, :, :]
    return float(np.sum(coupling.mass * np.sum(diff_grad * diff_x, axis=-1)))


def gamma_dm(cost: MeanFieldCost, coupling: Coupling) -> float:
    """int [grad F(x, m) - grad F(x', m2)].(x - x') pi(dx, dx') with m, m2 the marginals."""
    try:
        coupling.validate_marginals(MARGINAL_TOLERANCE)
    except MeasureError:
        logger.warning("invalid_coupling", total_mass=coupling.total_mass())
        raise
    m, m2 = coupling.first_marginal(), coupling.second_marginal()
    return _dm_form(cost.grad_x(coupling.rows, m), cost.grad_x(coupling.cols, m2), coupling)


# -- random measures -----------------------------------------------------------


def _random_measure(rng: np.random.Generator, dim: int, size: int, uniform: bool) -> DiscreteMeasure:
    scale = float(np.exp(rng.uniform(np.log(0.1), np.log(3.0))))
    center = rng.normal(scale=scale, size=dim)
    points = center + rng.normal(scale=scale, size=(size, dim))
    masses = None if uniform else rng.dirichlet(np.ones(size))
    return DiscreteMeasure(points=points, masses=masses)


def _witness(kind: str, value: float, m: DiscreteMeasure, m2: DiscreteMeasure, coupling: str | None = None) -> MonotonicityWitness:
    return MonotonicityWitness(
        kind=kind,
        value=value,
        coupling=coupling,
        points=m.points.tolist(),
        masses=m.masses.tolist(),
        points2=m2.points.tolist(),
        masses2=m2.masses.tolist(),
    )


def probe_monotonicity(
    cost: MeanFieldCost,
    trials: int,
    seed: int,
    ll_tol: float = 1e-6,
    dm_tol: float = 1e-9,
) -> MonotonicityReport:
    """Search random measure pairs and couplings for monotonicity violations.

    Couplings tried per pair: independent, comonotone, antimonotone and, for
    equal-size uniform pairs, a random permutation. Deterministic given
    (trials, seed).
    """
    if trials < 1:
        raise MeasureError(f"trials must be positive, got {trials}")
    rng = np.random.default_rng(seed)
    declared = cost.constants.dm_constant

    min_ll = min_dm = min_ratio = min_weak = np.inf
    ll_count = dm_count = 0
    ll_witnesses: list[MonotonicityWitness] = []
    dm_witnesses: list[MonotonicityWitness] = []

    for _ in range(trials):
        size = int(rng.integers(1, MAX_ATOMS + 1))
        equal = bool(rng.random() < 0.5)
        size2 = size if equal else int(rng.integers(1, MAX_ATOMS + 1))
        m = _random_measure(rng, cost.dim, size, uniform=equal)
        m2 = _random_measure(rng, cost.dim, size2, uniform=equal)

        ll = gamma_ll(cost, m, m2)
        min_ll = min(min_ll, ll)
        if ll < -ll_tol:
            ll_count += 1
            if len(ll_witnesses) < MAX_WITNESSES:
                ll_witnesses.append(_witness("lasry_lions", ll, m, m2))

        couplings = {
            "independent": Coupling.independent(m, m2),
            "comonotone": Coupling.comonotone(m, m2),
            "antimonotone": Coupling.antimonotone(m, m2),
        }
        if equal:
            couplings["permutation"] = Coupling.from_permutation(m, m2, rng.permutation(size))

        # every coupling shares the marginals m and m2
        g1 = cost.grad_x(m.points, m)
        g2 = cost.grad_x(m2.points, m2)
        spread = 1.0 + m.abs_moment(1) + m2.abs_moment(1)
        for label, coupling in couplings.items():
            dm = _dm_form(g1, g2, coupling)
            min_dm = min(min_dm, dm)
            disp = coupling.squared_displacement()
            if disp > 1e-14:
                min_ratio = min(min_ratio, dm / disp)
                min_weak = min(min_weak, dm * spread / disp)
            if dm < -dm_tol:
                dm_count += 1
                if len(dm_witnesses) < MAX_WITNESSES:
                    dm_witnesses.append(_witness("displacement", dm, m, m2, label))

    refuted = bool(min_ratio < declared - dm_tol)
    report = MonotonicityReport(
        cost=cost.name,
        trials=trials,
        seed=seed,
        min_gamma_ll=float(min_ll),
        min_gamma_dm=float(min_dm),
        min_dm_ratio=float(min_ratio),
        min_weak_dm_ratio=float(min_weak),
        ll_violations=ll_count,
        dm_violations=dm_count,
        declared_dm_constant=declared,
        declared_dm_refuted=refuted,
        ll_witnesses=ll_witnesses,
        dm_witnesses=dm_witnesses,
    )
    logger.info(
        "monotonicity_probed",
        cost=cost.name,
        trials=trials,
        ll_violations=ll_count,
        dm_violations=dm_count,
        min_dm_ratio=report.min_dm_ratio,
    )
    return report


def check_dissipativity(cost: MeanFieldCost, samples: int, seed: int, tol: float = 1e-9) -> DissipativityReport:
    """Worst margin of 2x.grad F - alpha|x|^2 - c1 - c2(|x|^2 - |m|_2^2) over random (x, m)."""
    diss = cost.constants.dissipativity
    if diss is None:
        raise MeasureError(f"{cost.name} declares no dissipativity constants")
    rng = np.random.default_rng(seed)
    per_measure = 8
    worst, witness = np.inf, None
    done = 0
    while done < samples:
        batch = min(per_measure, samples - done)
        m = _random_measure(rng, cost.dim, int(rng.integers(1, 17)), uniform=False)
        x = rng.normal(scale=float(np.exp(rng.uniform(np.log(0.05), np.log(5.0)))), size=(batch, cost.dim))
        sq = np.sum(x**2, axis=1)
        margin = (
            2.0 * np.sum(x * cost.grad_x(x, m), axis=1)
            - diss.alpha * sq
            - diss.c1
            - diss.c2 * (sq - m.abs_moment(2))
        )
        k = int(np.argmin(margin))
        if margin[k] < worst:
            worst, witness = float(margin[k]), x[k].tolist()
        done += batch
    return DissipativityReport(
        cost=cost.name,
        samples=samples,
        passed=worst >= -tol,
        worst_margin=worst,
        witness_x=witness,
    )


# -- finite-difference checks ------------------------------------------------------


def _rel_error(numeric: np.ndarray, analytic: np.ndarray) -> np.ndarray:
    return np.abs(numeric - analytic) / (1.0 + np.abs(analytic))


def check_gradient(
    cost: MeanFieldCost, samples: int = 100, seed: int = 0, tol: float = 1e-6
) -> GradientCheck:
    """Central differences of F(., m) against grad_x at random (x, m)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        m = _random_measure(rng, cost.dim, int(rng.integers(1, 9)), uniform=False)
        x = rng.normal(scale=2.0, size=(1, cost.dim))
        analytic = cost.grad_x(x, m)[0]
        shifts = FD_STEP * np.eye(cost.dim)
        numeric = (cost.value(x + shifts, m) - cost.value(x - shifts, m)) / (2.0 * FD_STEP)
        worst = max(worst, float(np.max(_rel_error(numeric, analytic))))
    return GradientCheck(name=cost.name, samples=samples, max_rel_error=worst, tolerance=tol, passed=worst <= tol)


def check_game_gradients(
    game: FinitePlayerGame, samples: int = 20, seed: int = 0, tol: float = 1e-6
) -> GradientCheck:
    """Central differences of F_i in the i-th block against grad_{x_i} F_i."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = rng.normal(scale=1.5, size=(game.n_players, game.dim))
        for i in range(game.n_players):
            analytic = np.asarray(game.grads[i](x), dtype=float).reshape(game.dim)
            numeric = np.empty(game.dim)
            for j in range(game.dim):
                up, down = x.copy(), x.copy()
                up[i, j] += FD_STEP
                down[i, j] -= FD_STEP
                numeric[j] = (game.costs[i](up) - game.costs[i](down)) / (2.0 * FD_STEP)
            worst = max(worst, float(np.max(_rel_error(numeric, analytic))))
    return GradientCheck(name=game.name, samples=samples, max_rel_error=worst, tolerance=tol, passed=worst <= tol)


def check_potential(
    potential: Potential,
    lo: float = -8.0,
    hi: float = 8.0,
    nodes: int = 4001,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-6,
    mass_tol: float = 1e-8,
) -> PotentialCheck:
    """Unit mass of exp(-U) on a 1-D grid and central differences of U against grad."""
    norm_error: Optional[float] = None
    if potential.proper and potential.dim == 1:
        grid = np.linspace(lo, hi, nodes)[:, None]
        log_mass = log_trapezoid(-potential.value(grid), (hi - lo) / (nodes - 1))
        norm_error = float(abs(np.expm1(log_mass)))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = rng.normal(scale=2.0, size=(1, potential.dim))
        analytic = potential.grad(x)[0]
        shifts = FD_STEP * np.eye(potential.dim)
        numeric = (potential.value(x + shifts) - potential.value(x - shifts)) / (2.0 * FD_STEP)
        worst = max(worst, float(np.max(_rel_error(numeric, analytic))))

    passed = worst <= tol and (norm_error is None or norm_error <= mass_tol)
    return PotentialCheck(
        name=potential.name,
        normalization_error=norm_error,
        max_rel_error=worst,
        tolerance=tol,
        passed=passed,
    )

