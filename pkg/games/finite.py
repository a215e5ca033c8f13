"""Finite N-player games and their construction from a mean-field cost."""

from functools import partial
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import ConfigError
from games.base import MeanFieldCost
from measures.discrete import EmpiricalMeasure

PlayerCost = Callable[[np.ndarray], float]
PlayerGrad = Callable[[np.ndarray], np.ndarray]
# (player i, profile x, candidate actions y of shape (G, d)) -> costs (G,)
Deviation = Callable[[int, np.ndarray, np.ndarray], np.ndarray]


class FinitePlayerGame(BaseModel):
    """Costs F_i and own-action gradients grad_{x_i} F_i on profiles of shape (N, d)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = "game"
    n_players: int = Field(ge=2)
    dim: int = Field(default=1, ge=1)
    costs: list[PlayerCost]
    grads: list[PlayerGrad]
    lipschitz_bound: Optional[float] = None
    joint_grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    deviation: Optional[Deviation] = None
    source: Optional[MeanFieldCost] = None

    @model_validator(mode="after")
    def check_players(self) -> "FinitePlayerGame":
        if len(self.costs) != self.n_players or len(self.grads) != self.n_players:
            raise ConfigError(
                f"{self.name}: need {self.n_players} costs and gradients, "
                f"got {len(self.costs)} and {len(self.grads)}"
            )
        return self

    def profile(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float).reshape(self.n_players, self.dim)

    def cost(self, i: int, x: np.ndarray) -> float:
        return float(self.costs[i](self.profile(x)))

    def all_costs(self, x: np.ndarray) -> np.ndarray:
        x = self.profile(x)
        return np.array([float(f(x)) for f in self.costs])

    def stacked_grad(self, x: np.ndarray) -> np.ndarray:
        """(grad_{x_1} F_1, ..., grad_{x_N} F_N) at x, shape (N, d)."""
        x = self.profile(x)
        if self.joint_grad is not None:
            return np.asarray(self.joint_grad(x), dtype=float).reshape(self.n_players, self.dim)
        return np.stack([np.asarray(g(x), dtype=float).reshape(self.dim) for g in self.grads])

    def deviation_costs(self, i: int, x: np.ndarray, actions: np.ndarray) -> np.ndarray:
        """F_i(y, x^-i) for each candidate action y."""
        x = self.profile(x)
        actions = np.asarray(actions, dtype=float).reshape(-1, self.dim)
        if self.deviation is not None:
            return np.asarray(self.deviation(i, x, actions), dtype=float)
        out = np.empty(actions.shape[0])
        trial = x.copy()
        for g, y in enumerate(actions):
            trial[i] = y
            out[g] = self.costs[i](trial)
        return out


def _loo_measure(x: np.ndarray, i: int) -> EmpiricalMeasure:
    return EmpiricalMeasure(points=np.delete(x, i, axis=0))


def _sym_cost(cost: MeanFieldCost, i: int, x: np.ndarray) -> float:
    return float(cost.value(x[i : i + 1], _loo_measure(x, i))[0])


def _sym_grad(cost: MeanFieldCost, i: int, x: np.ndarray) -> np.ndarray:
    return cost.grad_x(x[i : i + 1], _loo_measure(x, i))[0]


def _sym_joint_grad(cost: MeanFieldCost, x: np.ndarray) -> np.ndarray:
    return cost.grad_loo(x[None])[0]


def _sym_deviation(cost: MeanFieldCost, i: int, x: np.ndarray, actions: np.ndarray) -> np.ndarray:
    return cost.value(actions, _loo_measure(x, i))


def symmetrize(cost: MeanFieldCost, n: int, name: Optional[str] = None) -> FinitePlayerGame:
    """The N-player game F_i(x) = F(x_i, mu^{N-1}_{x^-i}).

    The gradient is the x-gradient of F at the leave-one-out measure; the
    measure-derivative correction does not enter.
    """
    if n < 2:
        raise ConfigError(f"symmetrize needs N >= 2 players, got {n}")
    return FinitePlayerGame(
        name=name or f"{cost.name}[N={n}]",
        n_players=n,
        dim=cost.dim,
        costs=[partial(_sym_cost, cost, i) for i in range(n)],
        grads=[partial(_sym_grad, cost, i) for i in range(n)],
        lipschitz_bound=cost.constants.lipschitz_bound,
        joint_grad=partial(_sym_joint_grad, cost),
        deviation=partial(_sym_deviation, cost),
        source=cost,
    )
