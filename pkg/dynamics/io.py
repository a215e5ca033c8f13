"""CSV export of recorded series, trajectories and particle snapshots."""

import csv
from pathlib import Path

from core.errors import ConfigError
from dynamics.ode import Trajectory
from schemas.series import ParticleState, StatSeries


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_series_csv(path: Path | str, series: list[StatSeries]) -> Path:
    """One `time` column followed by one column per statistic; all series must share their times."""
    if not series:
        raise ConfigError("nothing to write")
    times = series[0].times
    for s in series[1:]:
        if s.times != times:
            raise ConfigError(f"series {s.label!r} is recorded at different times than {series[0].label!r}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["time"] + [s.label for s in series])
        for k, t in enumerate(times):
            writer.writerow([_fmt(t)] + [_fmt(s.values[k]) for s in series])
    return path


def read_series_csv(path: Path | str) -> list[StatSeries]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][0] != "time":
        raise ConfigError(f"{path}: missing time column")
    header, body = rows[0], [[float(v) for v in row] for row in rows[1:]]
    times = [row[0] for row in body]
    return [
        StatSeries(label=label, times=times, values=[row[j] for row in body])
        for j, label in enumerate(header[1:], start=1)
    ]


def write_snapshot_csv(path: Path | str, state: ParticleState) -> Path:
    """Rows `particle,time,x0,...` for one snapshot."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["particle", "time"] + [f"x{j}" for j in range(state.dim)])
        for i, pos in enumerate(state.positions):
            writer.writerow([i, _fmt(state.time)] + [_fmt(v) for v in pos])
    return path


def write_trajectory_csv(path: Path | str, trajectory: Trajectory) -> Path:
    """Long format `time,player,x0,...` for a gradient-flow trajectory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    dim = trajectory.states.shape[-1]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["time", "player"] + [f"x{j}" for j in range(dim)])
        for t, state in zip(trajectory.times, trajectory.states):
            for i, pos in enumerate(state):
                writer.writerow([_fmt(t), i] + [_fmt(v) for v in pos])
    return path
