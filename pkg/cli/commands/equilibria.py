"""Grid-solver and Nash experiments: invariant, sigma-sweep, nash, epsilon-nash."""

from pathlib import Path

from analysis.equilibria import (
    check_sigma_rate_hypotheses,
    epsilon_nash_report,
    invariant_report,
    nash_convergence_report,
    sigma_rate_report,
)
from cli.loader import cost_from, instance_from
from core.errors import ConfigError
from core.logging import get_logger
from meanfield.fixed_point import invariant_fixed_point
from meanfield.io import write_sweep_csv
from meanfield.sweep import mfe_sigma_sweep
from measures.io import write_measure_csv
from schemas.config import RunConfig
from schemas.reports import ExperimentReport

logger = get_logger(__name__)

# gradient-flow horizon for Nash profiles
NASH_DEFAULTS = {"dt": 0.01, "t_end": 40.0, "n_list": "10,40,160"}
EPSILON_NASH_DEFAULTS = {"n_list": "10,40,160", "grid_nodes": 1601}

DENSITY_FILE = "invariant_density.csv"


def cmd_invariant(cfg: RunConfig, out: Path) -> ExperimentReport:
    instance = instance_from(cfg)
    grid = cfg.grid()
    result = invariant_fixed_point(instance, grid, tol=cfg.tol, max_iter=cfg.max_iter, damping=cfg.damping)
    path = write_measure_csv(out / DENSITY_FILE, result.measure)
    logger.info("density_written", game=cfg.game, sigma=instance.sigma, path=str(path))
    return invariant_report(
        instance, grid, tol=cfg.tol, max_iter=cfg.max_iter, damping=cfg.damping, result=result
    )


def cmd_sigma_sweep(cfg: RunConfig, out: Path) -> ExperimentReport:
    instance = instance_from(cfg, sigma=cfg.sigmas[0])
    grid = cfg.grid()
    check_sigma_rate_hypotheses(instance, cfg.sigmas)
    sweep = mfe_sigma_sweep(instance, cfg.sigmas, grid, tol=cfg.tol, max_iter=cfg.max_iter, damping=cfg.damping)
    path = write_sweep_csv(out, instance, sweep)
    logger.info("sweep_written", game=cfg.game, sigmas=len(cfg.sigmas), failures=len(sweep.failures), path=str(path))
    return sigma_rate_report(
        instance,
        cfg.sigmas,
        grid,
        tol=cfg.tol,
        max_iter=cfg.max_iter,
        damping=cfg.damping,
        sweep=sweep,
    )


def cmd_nash(cfg: RunConfig, out: Path) -> ExperimentReport:
    return nash_convergence_report(
        cost_from(cfg), cfg.n_list, cfg.grid(), p=cfg.p, dt=cfg.dt, t_end=cfg.t_end, seed=cfg.seed
    )


def cmd_epsilon_nash(cfg: RunConfig, out: Path) -> ExperimentReport:
    cost = cost_from(cfg)
    m0 = cost.analytic_mfe()
    if m0 is None:
        raise ConfigError(f"{cfg.game!r} has no closed-form MFE to sample players from", game=cfg.game)
    return epsilon_nash_report(
        cost,
        m0,
        cfg.n_list,
        cfg.seeds,
        cfg.grid(),
        seed=cfg.seed,
        refine=cfg.refine,
        workers=cfg.workers,
    )
