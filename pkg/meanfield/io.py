"""CSV export of invariant densities and temperature-sweep tables.

Each converged m^sigma is written with `write_measure_csv` under
``densities/``; ``sweep.csv`` has one row per sigma and leaves the cells of
a failed sigma empty.
"""

import csv
from pathlib import Path
from typing import Optional

from core.errors import ConfigError
from games.instance import GameInstance
from meanfield.free_energy import free_energy
from measures.io import write_measure_csv
from schemas.equilibria import SigmaSweepResult

DENSITY_DIR = "densities"
SWEEP_HEADER = ["sigma", "iterations", "residual", "log_normalizer", "free_energy", "w2_consecutive", "density"]


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else format(float(value), ".17g")


def density_name(idx: int) -> str:
    return f"sigma_{idx:03d}.csv"


def write_sweep_csv(out: Path | str, instance: GameInstance, sweep: SigmaSweepResult) -> Path:
    """Write every converged density and the per-sigma table; returns the table path."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "sweep.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for idx, (sigma, res) in enumerate(zip(sweep.sigmas, sweep.results)):
            w2 = sweep.w2_consecutive[idx] if idx < len(sweep.w2_consecutive) else None
            if res is None:
                writer.writerow([_fmt(sigma), "", "", "", "", "", ""])
                continue
            name = f"{DENSITY_DIR}/{density_name(idx)}"
            write_measure_csv(out / name, res.measure)
            phi = free_energy(instance.cost, instance.potential, res.measure, res.measure, sigma)
            writer.writerow(
                [
                    _fmt(sigma),
                    res.iterations,
                    _fmt(res.residual),
                    _fmt(res.log_normalizer),
                    _fmt(phi),
                    _fmt(w2),
                    name,
                ]
            )
    return path


def read_sweep_csv(path: Path | str) -> list[dict[str, Optional[float | int | str]]]:
    """Rows of ``sweep.csv`` with empty cells as None."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != SWEEP_HEADER:
        raise ConfigError(f"{path}: not a sweep table")
    table = []
    for row in rows[1:]:
        record: dict[str, Optional[float | int | str]] = {}
        for key, cell in zip(SWEEP_HEADER, row):
            if cell == "":
                record[key] = None
            elif key == "iterations":
                record[key] = int(cell)
            elif key == "density":
                record[key] = cell
            else:
                record[key] = float(cell)
        table.append(record)
    return table
