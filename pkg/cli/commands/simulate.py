"""`simulate`: one interacting particle run written as CSV."""

from pathlib import Path

from cli.loader import instance_from
from core.logging import get_logger
from dynamics.io import write_series_csv, write_snapshot_csv
from dynamics.particles import gaussian_initial, simulate_interacting
from schemas.config import RunConfig
from schemas.series import StatSeries

logger = get_logger(__name__)

SERIES_FILE = "series.csv"
STDERR_FILE = "series_stderr.csv"
SNAPSHOT_DIR = "snapshots"


def cmd_simulate(cfg: RunConfig, out: Path) -> None:
    instance = instance_from(cfg)
    sde = cfg.sde()
    x0 = gaussian_initial(cfg.n, instance.dim, sde.replicas, sde.seed, scale=cfg.init_scale)
    result = simulate_interacting(
        instance, cfg.n, x0, sde, snapshots=cfg.snapshots, workers=cfg.workers
    )

    path = write_series_csv(out / SERIES_FILE, result.all_series())
    if sde.replicas > 1:
        stderr = [
            StatSeries.from_arrays(f"{label}_stderr", result.times, result.stderr(label))
            for label in result.labels
        ]
        write_series_csv(out / STDERR_FILE, stderr)
    for k, state in enumerate(result.snapshot_states()):
        write_snapshot_csv(out / SNAPSHOT_DIR / f"step_{k:05d}.csv", state)

    logger.info("simulation_written", game=cfg.game, n=cfg.n, path=str(path))
    print(path)
