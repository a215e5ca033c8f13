"""Helpers shared by the experiment reports."""

from typing import Any

import numpy as np

from dynamics.engine import SimulationResult
from games.instance import GameInstance
from schemas.reports import to_native

DEGENERATE_LEVEL = 1e-300


def series_payload(result: SimulationResult, label: str) -> dict[str, list[float]]:
    """Recorded times with the replica mean and standard error of one statistic."""
    return {
        "times": result.times.tolist(),
        "mean": result.values[label].mean(axis=0).tolist(),
        "stderr": result.stderr(label).tolist(),
    }


def instance_parameters(instance: GameInstance) -> dict[str, Any]:
    cost = instance.cost
    params = cost.model_dump()
    return to_native(
        {
            "cost": cost.name,
            "cost_params": params,
            "potential": instance.potential.name,
            "potential_params": instance.potential.model_dump(),
            "sigma": instance.sigma,
            "dm_constant": cost.constants.dm_constant,
            "convexity_U": instance.potential.convexity_constant,
            "contraction_rate": instance.contraction_rate,
        }
    )


def centered_signs(n: int) -> np.ndarray:
    """+1, -1, +1, ... for N particles."""
    return np.where(np.arange(n) % 2 == 0, 1.0, -1.0)


def is_degenerate(values: np.ndarray) -> bool:
    return bool(np.all(np.abs(values) <= DEGENERATE_LEVEL))
