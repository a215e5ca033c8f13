"""Propagation of chaos and concentration of the empirical measure."""

import math
from typing import Optional

import numpy as np

from analysis.common import instance_parameters, is_degenerate, series_payload
from analysis.fitting import ratio_spread, trend_test
from core.errors import ConfigError, HypothesisError
from core.logging import get_logger
from dynamics.coupling import MeanFieldReference, simulate_poc_coupling
from dynamics.particles import simulate_interacting
from games.instance import GameInstance
from measures.discrete import EmpiricalMeasure
from measures.wasserstein import wasserstein
from schemas.config import SdeConfig
from schemas.reports import CheckResult, ExperimentReport

logger = get_logger(__name__)

MAX_POC_RATIO = 2.0
BURN_IN_RATES = 4.0
TAIL_TARGET = 0.1
MC_SIGMAS = 3.0


def poc_report(
    instance: GameInstance,
    n_list: list[int],
    cfg: SdeConfig,
    reference: MeanFieldReference,
    init_mean: float = 0.0,
    init_scale: float = 1.0,
    workers: Optional[int] = None,
) -> ExperimentReport:
    """
    S(N) = sup_t N mean |X^{i,N}_t - X^i_t|^2 across particle counts.

    Passes iff max S / min S <= 2 and no S(N) series trends upward over the
    final third of the horizon (mean replica slope within three standard errors).
    """
    if any(b <= a for a, b in zip(n_list, n_list[1:])) or not n_list:
        raise ConfigError(f"particle counts must be strictly increasing, got {n_list}")

    sup_gaps: list[float] = []
    per_n: dict[str, dict] = {}
    trend_checks: list[CheckResult] = []
    for n in n_list:
        result = simulate_poc_coupling(
            instance, n, cfg, reference, init_mean=init_mean, init_scale=init_scale, workers=workers
        )
        series = result.series("scaled_gap")
        sup_gaps.append(float(series.v.max()))
        entry = {"sup": sup_gaps[-1], "series": series_payload(result, "scaled_gap")}
        if not is_degenerate(series.v):
            trend = trend_test(result.times, result.values["scaled_gap"])
            entry.update(trend_slope=trend.slope, trend_stderr=trend.stderr)
            trend_checks.append(CheckResult.evaluate(f"trend_slope[N={n}]", trend.slope, "<=", trend.threshold))
        per_n[str(n)] = entry
        logger.info("poc_point", n=n, sup=sup_gaps[-1])

    notes: list[str] = []
    degenerate = all(s <= 1e-300 for s in sup_gaps)
    if degenerate:
        notes.append("particle and mean-field systems coincide; every S(N) is zero")
        checks = [CheckResult.evaluate("max_sup_gap", max(sup_gaps), "<=", 0.0)]
    else:
        ratio = ratio_spread(sup_gaps) if min(sup_gaps) > 0 else math.inf
        checks = [CheckResult.evaluate("sup_ratio", ratio, "<=", MAX_POC_RATIO), *trend_checks]

    return ExperimentReport.from_checks(
        name="poc",
        game=instance.cost.name,
        parameters={
            **instance_parameters(instance),
            "n_list": list(n_list),
            "dt": cfg.dt,
            "t_end": cfg.t_end,
            "replicas": cfg.replicas,
            "seed": cfg.seed,
            "reference": reference.kind,
            "proxy_size": reference.size,
            "init_mean": init_mean,
            "init_scale": init_scale,
        },
        measurements={"sup_scaled_gap": sup_gaps, "per_n": per_n},
        bounds={"max_ratio": MAX_POC_RATIO},
        checks=checks,
        degenerate=degenerate,
        notes=notes,
    )


def concentration_bound(r: float, n: int, sigma: float, rate: float, c: float) -> float:
    """2 exp(-(rate / (10 N sigma)) (r^2/5 - C N r sqrt(sigma) rate^{-1/2}))."""
    exponent = (rate / (10.0 * n * sigma)) * (r * r / 5.0 - c * n * r * math.sqrt(sigma) / math.sqrt(rate))
    return 2.0 * math.exp(-min(exponent, 700.0)) if exponent > -700.0 else math.inf


def radius_for_target(n: int, sigma: float, rate: float, c: float, target: float = TAIL_TARGET) -> float:
    """Positive root r of concentration_bound(r) = target."""
    k = c * n * math.sqrt(sigma) / math.sqrt(rate)
    spread = math.log(2.0 / target) * 10.0 * n * sigma / rate
    return (5.0 * k + math.sqrt(25.0 * k * k + 20.0 * spread)) / 2.0


def concentration_report(
    instance: GameInstance,
    nash_profile: np.ndarray,
    cfg: SdeConfig,
    calibrated_c: float,
    r_list: Optional[list[float]] = None,
    target: float = TAIL_TARGET,
    workers: Optional[int] = None,
) -> ExperimentReport:
    """
    Tail frequency of W_1(mu^N_{X_t}, mu^N_x) over replicas against the concentration bound.

    Every replica starts at the Nash profile x and is read at t_end, which
    must clear the burn-in 4 / (l_F + sigma l_U). Radii whose bound is at
    least one are flagged vacuous and left out of the verdict. The radius
    where the bound equals `target` is always evaluated.
    """
    rate = instance.contraction_rate
    if rate <= 0:
        raise HypothesisError(f"l_F + sigma l_U = {rate:g} <= 0: no concentration bound applies")
    burn_in = BURN_IN_RATES / rate
    if cfg.t_end < burn_in:
        raise ConfigError(f"t_end={cfg.t_end} is shorter than the burn-in {burn_in:.4g}")
    profile = np.asarray(nash_profile, dtype=float).reshape(-1, instance.dim)
    n, sigma = profile.shape[0], instance.sigma

    result = simulate_interacting(instance, n, profile, cfg, workers=workers)
    anchor = EmpiricalMeasure(points=profile)
    distances = np.array([wasserstein(EmpiricalMeasure(points=x), anchor, p=1.0) for x in result.final])

    r_star = radius_for_target(n, sigma, rate, calibrated_c, target)
    radii = sorted(set(r_list or [])) + [r_star]
    replicas = distances.shape[0]
    rows, checks, notes = [], [], []
    for r in radii:
        bound = concentration_bound(r, n, sigma, rate, calibrated_c)
        freq = float(np.mean(distances > r))
        row = {"r": r, "frequency": freq, "bound": bound, "vacuous": bound >= 1.0}
        if bound >= 1.0:
            notes.append(f"bound at r={r:.6g} is {bound:.3g} >= 1 (vacuous)")
        else:
            se = math.sqrt(bound * (1.0 - bound) / replicas)
            row["stderr"] = se
            checks.append(CheckResult.evaluate(f"tail[r={r:.6g}]", freq, "<=", bound + MC_SIGMAS * se))
        rows.append(row)

    return ExperimentReport.from_checks(
        name="concentration",
        game=instance.cost.name,
        parameters={
            **instance_parameters(instance),
            "n": n,
            "dt": cfg.dt,
            "t_end": cfg.t_end,
            "replicas": replicas,
            "seed": cfg.seed,
            "calibrated_c": calibrated_c,
            "target": target,
        },
        measurements={"w1": distances, "tails": rows, "r_star": r_star},
        bounds={"burn_in": burn_in, "target": target},
        checks=checks,
        notes=notes,
    )
