"""`bench`: wall-clock per Euler step on the fast and pairwise drift paths."""

import time
from pathlib import Path
from typing import Callable

import numpy as np
from prometheus_client import CollectorRegistry, Histogram, write_to_textfile

from analysis.fitting import loglog_slope
from cli.loader import instance_from
from core.logging import get_logger
from dynamics.noise import PhiloxNoise
from dynamics.particles import gaussian_initial, interaction_drift
from games.base import MeanFieldCost
from games.instance import GameInstance
from schemas.config import RunConfig
from schemas.reports import ExperimentReport

logger = get_logger(__name__)

TABLE_FILE = "bench.csv"
METRICS_FILE = "metrics.prom"

STEP_BUCKETS = [1e-5, 1e-4, 5e-4, 1e-3, 5e-3, 1e-2, 5e-2, 0.1, 0.5, 1.0, 5.0]

Drift = Callable[[np.ndarray], np.ndarray]


def _drifts(instance: GameInstance) -> dict[str, Drift]:
    cost, potential, sigma = instance.cost, instance.potential, instance.sigma

    def fast(x: np.ndarray) -> np.ndarray:
        return interaction_drift(cost, x) + sigma * potential.grad(x)

    def pairwise(x: np.ndarray) -> np.ndarray:
        if x.shape[1] == 1:
            return fast(x)
        return MeanFieldCost.grad_loo(cost, x) + sigma * potential.grad(x)

    return {"fast": fast, "pairwise": pairwise}


def time_steps(instance: GameInstance, drift: Drift, n: int, steps: int, dt: float, seed: int) -> list[float]:
    x = gaussian_initial(n, instance.dim, 1, seed)
    stream = PhiloxNoise(seed).stream(0, n, instance.dim)
    scale = np.sqrt(2.0 * instance.sigma * dt)
    out = []
    for _ in range(steps):
        start = time.perf_counter()
        x = x - dt * drift(x) + scale * stream.draw()[None]
        out.append(time.perf_counter() - start)
    return out


def cmd_bench(cfg: RunConfig, out: Path) -> ExperimentReport:
    instance = instance_from(cfg)
    registry = CollectorRegistry()
    step_seconds = Histogram(
        "mfl_bench_step_seconds",
        "Wall-clock seconds per Euler step",
        ["path", "n"],
        buckets=STEP_BUCKETS,
        registry=registry,
    )

    rows = []
    exponents: dict[str, float] = {}
    for path, drift in _drifts(instance).items():
        means = []
        for n in cfg.bench_n:
            timings = time_steps(instance, drift, n, cfg.bench_steps, cfg.dt, cfg.seed)
            for t in timings:
                step_seconds.labels(path=path, n=str(n)).observe(t)
            means.append(float(np.mean(timings)))
            rows.append({"path": path, "n": n, "steps": cfg.bench_steps, "mean_step_seconds": means[-1]})
            logger.info("bench_point", path=path, n=n, mean_step_seconds=means[-1])
        sized = [(n, m) for n, m in zip(cfg.bench_n, means) if n > 1 and m > 0]
        if len(sized) >= 2:
            ns, ms = zip(*sized)
            exponents[path] = loglog_slope(np.array(ns, dtype=float), np.array(ms)).slope

    out.mkdir(parents=True, exist_ok=True)
    with (out / TABLE_FILE).open("w") as fh:
        fh.write("path,n,steps,mean_step_seconds\n")
        fh.writelines(f"{r['path']},{r['n']},{r['steps']},{r['mean_step_seconds']:.6e}\n" for r in rows)
    write_to_textfile(str(out / METRICS_FILE), registry)

    return ExperimentReport.from_checks(
        name="bench",
        game=instance.cost.name,
        parameters={"bench_n": cfg.bench_n, "bench_steps": cfg.bench_steps, "dt": cfg.dt, "seed": cfg.seed},
        measurements={"timings": rows, "scaling_exponent": exponents, "fast_path": instance.cost.fast_path},
        notes=["timings depend on the machine; this report carries no verdict checks"],
    )
