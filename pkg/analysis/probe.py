"""Monotonicity classification and declared-constant checks for one game."""

from typing import Optional

from core.errors import ConfigError
from games.base import MeanFieldCost
from games.catalog import Game
from games.finite import FinitePlayerGame
from games.probes import check_dissipativity, check_game_gradients, check_gradient, probe_monotonicity
from schemas.reports import CheckResult, ExperimentReport

DM_TOLERANCE = 1e-9
LL_TOLERANCE = 1e-6


def _classify(violations: int) -> str:
    return "violated" if violations else "not refuted"


def probe_report(
    game: Game,
    trials: int = 10_000,
    seed: int = 0,
    gradient_samples: int = 100,
    gradient_tol: float = 1e-6,
    dissipativity_samples: Optional[int] = None,
) -> ExperimentReport:
    """
    Random search for Lasry-Lions and displacement monotonicity violations.

    The classification itself never fails the report; the verdict checks
    only what the game declares: its displacement constant, its gradients
    and, when present, its dissipativity constants.
    """
    if trials < 1:
        raise ConfigError(f"trials must be positive, got {trials}")
    if isinstance(game, FinitePlayerGame):
        grads = check_game_gradients(game, samples=gradient_samples, seed=seed, tol=gradient_tol)
        return ExperimentReport.from_checks(
            name="probe",
            game=game.name,
            parameters={"trials": trials, "seed": seed, "gradient_samples": gradient_samples},
            measurements={"gradient_max_rel_error": grads.max_rel_error},
            checks=[CheckResult.evaluate("gradient_rel_error", grads.max_rel_error, "<=", gradient_tol)],
            notes=["finite-player game: monotonicity is a property of mean-field costs"],
        )

    cost: MeanFieldCost = game
    mono = probe_monotonicity(cost, trials, seed, ll_tol=LL_TOLERANCE, dm_tol=DM_TOLERANCE)
    grads = check_gradient(cost, samples=gradient_samples, seed=seed, tol=gradient_tol)
    declared = cost.constants
    checks = [
        CheckResult.evaluate("empirical_dm_constant", mono.min_dm_ratio, ">=", declared.dm_constant - DM_TOLERANCE),
        CheckResult.evaluate("gradient_rel_error", grads.max_rel_error, "<=", gradient_tol),
    ]
    measurements = {
        "classification": {
            "lasry_lions": _classify(mono.ll_violations),
            "displacement": _classify(mono.dm_violations),
        },
        "min_gamma_ll": mono.min_gamma_ll,
        "min_gamma_dm": mono.min_gamma_dm,
        "ll_violations": mono.ll_violations,
        "dm_violations": mono.dm_violations,
        "empirical_dm_constant": mono.min_dm_ratio,
        "empirical_weak_dm_constant": mono.min_weak_dm_ratio,
        "ll_witnesses": [w.model_dump() for w in mono.ll_witnesses],
        "dm_witnesses": [w.model_dump() for w in mono.dm_witnesses],
        "gradient_max_rel_error": grads.max_rel_error,
    }
    if declared.weak_dm_constant is not None:
        checks.append(
            CheckResult.evaluate(
                "empirical_weak_dm_constant",
                mono.min_weak_dm_ratio,
                ">=",
                declared.weak_dm_constant - DM_TOLERANCE,
            )
        )
    if declared.dissipativity is not None:
        diss = check_dissipativity(cost, dissipativity_samples or trials, seed)
        measurements["dissipativity_worst_margin"] = diss.worst_margin
        checks.append(CheckResult.evaluate("dissipativity_margin", diss.worst_margin, ">=", -DM_TOLERANCE))

    return ExperimentReport.from_checks(
        name="probe",
        game=cost.name,
        parameters={
            "cost_params": cost.model_dump(),
            "trials": trials,
            "seed": seed,
            "gradient_samples": gradient_samples,
        },
        measurements=measurements,
        bounds={
            "declared_dm_constant": declared.dm_constant,
            "declared_weak_dm_constant": declared.weak_dm_constant,
            "ll_tolerance": LL_TOLERANCE,
            "dm_tolerance": DM_TOLERANCE,
        },
        checks=checks,
    )
