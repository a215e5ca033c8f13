"""Shared Euler-Maruyama driver for one or several coupled particle systems.

Every system is advanced from the same time level: drifts are evaluated on
the current states of all systems, then each system takes its step with the
noise block of the source it is wired to. Systems wired to the same source
see identical increments (synchronous coupling).
"""

from typing import Callable, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.config import get_settings
from core.errors import BlowUpError
from core.logging import get_logger
from dynamics.noise import NoiseSource
from dynamics.pool import run_replicas
from schemas.config import SdeConfig
from schemas.series import ParticleState, StatSeries

logger = get_logger(__name__)

States = list[np.ndarray]
Drift = Callable[[States, int], np.ndarray]
Stats = Callable[[States], dict[str, np.ndarray]]
Init = Callable[[np.ndarray], States]


class NoiseWiring(NamedTuple):
    source: NoiseSource
    n: int


class System(NamedTuple):
    drift: Drift
    noise: int


class SimulationResult(BaseModel):
    """Recorded statistics of every replica plus the final state of the first system."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    times: np.ndarray
    values: dict[str, np.ndarray]
    final: np.ndarray
    snapshots: Optional[np.ndarray] = None

    @property
    def replicas(self) -> int:
        return int(self.final.shape[0])

    @property
    def labels(self) -> list[str]:
        return list(self.values)

    def series(self, label: str) -> StatSeries:
        """Replica mean of one statistic."""
        return StatSeries.from_arrays(label, self.times, self.values[label].mean(axis=0))

    def stderr(self, label: str) -> np.ndarray:
        vals = self.values[label]
        if vals.shape[0] < 2:
            return np.zeros(vals.shape[1])
        return vals.std(axis=0, ddof=1) / np.sqrt(vals.shape[0])

    def all_series(self) -> list[StatSeries]:
        return [self.series(label) for label in self.values]

    def snapshot_states(self, replica: int = 0) -> list[ParticleState]:
        if self.snapshots is None:
            return []
        return [
            ParticleState(positions=pos, time=float(t))
            for t, pos in zip(self.times, self.snapshots[replica])
        ]


def euler_maruyama(
    cfg: SdeConfig,
    sigma: float,
    dim: int,
    init: Init,
    systems: list[System],
    wiring: list[NoiseWiring],
    stats: Stats,
    workers: Optional[int] = None,
    snapshots: bool = False,
    name: str = "simulation",
) -> SimulationResult:
    """X <- X - drift dt + sqrt(2 sigma dt) xi for every system, replica-parallel."""
    blow_up = get_settings().blow_up_threshold
    record = set(int(k) for k in cfg.record_steps)
    scale = np.sqrt(2.0 * sigma * cfg.dt)

    def run_chunk(replicas: np.ndarray) -> dict[str, np.ndarray]:
        states = init(replicas)
        streams = [[w.source.stream(int(r), w.n, dim) for r in replicas] for w in wiring]
        recorded: dict[str, list[np.ndarray]] = {}
        frames: list[np.ndarray] = []

        def take(k: int) -> None:
            for label, value in stats(states).items():
                recorded.setdefault(label, []).append(np.asarray(value, dtype=float))
            if snapshots:
                frames.append(states[0].copy())

        take(0)
        for k in range(1, cfg.n_steps + 1):
            drifts = [s.drift(states, k - 1) for s in systems]
            blocks = [np.stack([st.draw() for st in group]) for group in streams]
            states = [x - cfg.dt * b + scale * blocks[s.noise] for x, b, s in zip(states, drifts, systems)]
            for x in states:
                peak = np.max(np.abs(x.reshape(x.shape[0], -1)), axis=1)
                bad = ~np.isfinite(peak) | (peak > blow_up)
                if bad.any():
                    j = int(np.argmax(bad))
                    logger.error(
                        "simulation_blow_up", name=name, step=k, replica=int(replicas[j]), max_abs=float(peak[j])
                    )
                    raise BlowUpError(step=k, time=k * cfg.dt, max_abs=float(peak[j]), replica=int(replicas[j]))
            if k in record:
                take(k)

        out = {f"stat:{label}": np.stack(vals, axis=1) for label, vals in recorded.items()}
        out["final"] = states[0]
        if snapshots:
            out["snapshots"] = np.stack(frames, axis=1)
        return out

    logger.info("simulation_started", name=name, replicas=cfg.replicas, steps=cfg.n_steps, dt=cfg.dt)
    merged = run_replicas(run_chunk, cfg.replicas, workers)
    values = {key[5:]: arr for key, arr in merged.items() if key.startswith("stat:")}
    return SimulationResult(
        times=cfg.record_times,
        values=values,
        final=merged["final"],
        snapshots=merged.get("snapshots"),
    )
