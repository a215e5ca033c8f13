"""Synchronous-coupling experiments: exponential contraction and weak 1/t decay."""

from typing import Optional

import numpy as np

from analysis.common import (
    centered_signs,
    instance_parameters,
    is_degenerate,
    series_payload,
)
from analysis.fitting import fit_exponential_rate, power_law_exponent
from core.errors import HypothesisError
from core.logging import get_logger
from dynamics.coupling import simulate_coupled_pair
from dynamics.particles import InitialState, gaussian_initial, replica_initial
from games.instance import GameInstance
from schemas.config import SdeConfig
from schemas.reports import CheckResult, ExperimentReport

logger = get_logger(__name__)

DEFAULT_SLACK = 0.15
MIN_R_SQUARED = 0.98
MAX_EXPONENT = 0.1


def _initial_pair(
    instance: GameInstance,
    n: int,
    cfg: SdeConfig,
    x0: Optional[InitialState],
    y0: Optional[InitialState],
    offset: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Defaults: x0 i.i.d. standard normal, y0 = x0 shifted by alternating +-offset."""
    dim = instance.dim
    xb = (
        gaussian_initial(n, dim, cfg.replicas, cfg.seed)
        if x0 is None
        else replica_initial(x0, cfg.replicas, n, dim)
    )
    yb = xb + offset * centered_signs(n)[None, :, None] if y0 is None else replica_initial(y0, cfg.replicas, n, dim)
    return xb, yb


def _run_parameters(instance: GameInstance, n: int, cfg: SdeConfig) -> dict:
    return {
        **instance_parameters(instance),
        "n": n,
        "dt": cfg.dt,
        "t_end": cfg.t_end,
        "replicas": cfg.replicas,
        "seed": cfg.seed,
        "record_every": cfg.record_every,
    }


def contraction_report(
    instance: GameInstance,
    n: int,
    cfg: SdeConfig,
    x0: Optional[InitialState] = None,
    y0: Optional[InitialState] = None,
    offset: float = 1.0,
    slack: float = DEFAULT_SLACK,
    window: Optional[tuple[float, float]] = None,
    workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Fit the decay rate of mean |X_t - Y_t|^2 under synchronous coupling.

    Passes iff the fitted rate is at least 2(l_F + sigma l_U)(1 - slack)
    with r^2 >= 0.98. Identical starts give a zero series, reported as a
    degenerate pass.
    """
    rate = instance.contraction_rate
    if rate <= 0:
        raise HypothesisError(
            f"l_F + sigma l_U = {rate:g} <= 0: no contraction is claimed for this instance",
            rate=rate,
        )
    xb, yb = _initial_pair(instance, n, cfg, x0, y0, offset)
    result = simulate_coupled_pair(instance, n, xb, yb, cfg, workers=workers)
    series = result.series("gap")
    bound = 2.0 * rate

    params = {**_run_parameters(instance, n, cfg), "slack": slack, "offset": offset}
    measurements = {"gap": series_payload(result, "gap")}
    notes: list[str] = []

    if is_degenerate(series.v):
        notes.append("coupled systems coincide; gap series is identically zero")
        checks = [CheckResult.evaluate("max_gap", float(series.v.max()), "<=", 0.0)]
        degenerate = True
    else:
        fit = fit_exponential_rate(series, window)
        measurements.update(fit=fit.model_dump(), fitted_rate=fit.rate)
        checks = [
            CheckResult.evaluate("fitted_rate", fit.rate, ">=", bound * (1.0 - slack)),
            CheckResult.evaluate("r_squared", fit.r_squared, ">=", MIN_R_SQUARED),
        ]
        degenerate = False

    report = ExperimentReport.from_checks(
        name="contraction",
        game=instance.cost.name,
        parameters=params,
        measurements=measurements,
        bounds={"rate": bound, "rate_with_slack": bound * (1.0 - slack)},
        checks=checks,
        degenerate=degenerate,
        notes=notes,
    )
    logger.info("contraction_report", game=instance.cost.name, verdict=report.verdict)
    return report


def weak_dm_report(
    instance: GameInstance,
    n: int,
    cfg: SdeConfig,
    x0: Optional[InitialState] = None,
    y0: Optional[InitialState] = None,
    offset: float = 1.0,
    t_min: float = 1.0,
    workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Check that t * mean |X_t - Y_t|^2 stays bounded for t >= t_min.

    Bounded means the power-law exponent of t * gap over the final third
    of the horizon is at most 0.1 plus three standard errors.
    """
    constants = instance.cost.constants
    if instance.potential.convexity_constant < 0:
        raise HypothesisError(f"potential {instance.potential.name!r} is not convex")
    if constants.weak_dm_constant is None and instance.contraction_rate <= 0:
        raise HypothesisError(
            f"{instance.cost.name!r} declares neither a weak displacement constant nor l_F + sigma l_U > 0"
        )
    if cfg.t_end <= t_min:
        raise HypothesisError(f"horizon t_end={cfg.t_end} does not reach t_min={t_min}")

    xb, yb = _initial_pair(instance, n, cfg, x0, y0, offset)
    result = simulate_coupled_pair(instance, n, xb, yb, cfg, workers=workers)
    times = result.times
    weighted = times[None, :] * result.values["gap"]
    after = times >= t_min

    params = {**_run_parameters(instance, n, cfg), "offset": offset, "t_min": t_min}
    measurements = {
        "gap": series_payload(result, "gap"),
        "sup_weighted_gap": float(weighted[:, after].mean(axis=0).max()),
    }
    notes: list[str] = []
    if is_degenerate(weighted[:, after]):
        notes.append("coupled systems coincide; gap series is identically zero")
        checks = [CheckResult.evaluate("max_weighted_gap", float(np.abs(weighted).max()), "<=", 0.0)]
        degenerate = True
    else:
        trend = power_law_exponent(times, weighted, t_min=t_min)
        measurements.update(exponent=trend.slope, exponent_stderr=trend.stderr)
        checks = [CheckResult.evaluate("power_law_exponent", trend.slope, "<=", MAX_EXPONENT + trend.threshold)]
        degenerate = False

    return ExperimentReport.from_checks(
        name="weak_dm",
        game=instance.cost.name,
        parameters=params,
        measurements=measurements,
        bounds={"max_exponent": MAX_EXPONENT, "weak_dm_constant": constants.weak_dm_constant},
        checks=checks,
        degenerate=degenerate,
        notes=notes,
    )
