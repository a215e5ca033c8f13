"""CSV round trip for measures.

Atoms are written as ``x0,...,x{d-1},mass`` rows; grid densities as
``node,density`` rows. Floats use 17 significant digits so a read gives
back the same numbers.
"""

import csv
from pathlib import Path

import numpy as np

from core.errors import MeasureError
from measures.base import BaseMeasure
from measures.discrete import DiscreteMeasure
from measures.grid import GridMeasure1D

GRID_HEADER = ["node", "density"]


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_measure_csv(path: Path | str, m: BaseMeasure) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if isinstance(m, GridMeasure1D):
            writer.writerow(GRID_HEADER)
            for node, dens in zip(m.nodes, m.density):
                writer.writerow([_fmt(node), _fmt(dens)])
        elif isinstance(m, DiscreteMeasure):
            writer.writerow([f"x{j}" for j in range(m.dim)] + ["mass"])
            for point, mass in zip(m.points, m.masses):
                writer.writerow([_fmt(v) for v in point] + [_fmt(mass)])
        else:
            raise MeasureError(f"cannot serialize {type(m).__name__}")
    return path


def read_measure_csv(path: Path | str) -> BaseMeasure:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise MeasureError(f"{path}: no measure rows")
    header, body = rows[0], np.array(rows[1:], dtype=float)
    if header == GRID_HEADER:
        nodes = body[:, 0]
        return GridMeasure1D(lo=float(nodes[0]), hi=float(nodes[-1]), density=body[:, 1])
    if header[-1] != "mass":
        raise MeasureError(f"{path}: unrecognized header {header}")
    return DiscreteMeasure(points=body[:, :-1], masses=body[:, -1])
