"""Particle-coupling experiments: contraction, weak-dm, poc, concentration."""

from pathlib import Path

from analysis.chaos import concentration_report, poc_report
from analysis.contraction import contraction_report, weak_dm_report
from analysis.equilibria import nash_profile, sigma_rate_report
from cli.loader import instance_from
from core.logging import get_logger
from dynamics.coupling import MeanFieldReference
from schemas.config import RunConfig
from schemas.reports import ExperimentReport

logger = get_logger(__name__)

WEAK_DM_DEFAULTS = {"game": "weak_dm", "t_end": 20.0, "dt": 0.01}
POC_DEFAULTS = {"n_list": "10,20,40,80", "replicas": 32, "t_end": 2.0}
CONCENTRATION_DEFAULTS = {"replicas": 200, "n": 50}

PROFILE_DT = 0.01
PROFILE_T_END = 40.0


def cmd_contraction(cfg: RunConfig, out: Path) -> ExperimentReport:
    return contraction_report(
        instance_from(cfg), cfg.n, cfg.sde(), offset=cfg.offset, slack=cfg.slack, workers=cfg.workers
    )


def cmd_weak_dm(cfg: RunConfig, out: Path) -> ExperimentReport:
    return weak_dm_report(
        instance_from(cfg), cfg.n, cfg.sde(), offset=cfg.offset, t_min=cfg.t_min, workers=cfg.workers
    )


def cmd_poc(cfg: RunConfig, out: Path) -> ExperimentReport:
    if cfg.reference == "exact_lq":
        reference = MeanFieldReference.exact_lq()
    else:
        reference = MeanFieldReference.proxy(cfg.proxy_factor * max(cfg.n_list))
    return poc_report(
        instance_from(cfg),
        cfg.n_list,
        cfg.sde(),
        reference,
        init_scale=cfg.init_scale,
        workers=cfg.workers,
    )


def cmd_concentration(cfg: RunConfig, out: Path) -> ExperimentReport:
    """Start every replica at a Nash profile; C comes from a sigma sweep unless given."""
    instance = instance_from(cfg)
    c = cfg.calibrated_c
    if c is None:
        sweep = sigma_rate_report(
            instance, cfg.sigmas, cfg.grid(), tol=cfg.tol, max_iter=cfg.max_iter, damping=cfg.damping
        )
        c = float(sweep.measurements["calibrated_c"])
        logger.info("concentration_constant_calibrated", game=cfg.game, calibrated_c=c)
    profile = nash_profile(instance.cost, cfg.n, PROFILE_DT, PROFILE_T_END, seed=cfg.seed)
    report = concentration_report(instance, profile, cfg.sde(), c, r_list=cfg.r_list, workers=cfg.workers)
    if cfg.calibrated_c is None:
        report.notes.append(f"C calibrated from a sigma sweep over {cfg.sigmas}")
    return report
