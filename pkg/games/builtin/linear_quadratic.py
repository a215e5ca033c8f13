"""Quadratic costs that see the measure through its mean."""

from typing import ClassVar, Optional

import numpy as np
from pydantic import Field

from games.base import CostConstants, Dissipativity, StatisticCost
from measures.discrete import DiscreteMeasure


def _origin(dim: int) -> DiscreteMeasure:
    return DiscreteMeasure.dirac(np.zeros(dim))


class QuadCost(StatisticCost):
    """F(x, m) = k|x|^2 / 2, independent of m."""

    name: ClassVar[str] = "quad"

    k: float = Field(default=1.0, gt=0)

    @property
    def constants(self) -> CostConstants:
        return CostConstants(
            dm_constant=self.k,
            convexity_constant=self.k,
            lipschitz_bound=self.k,
            wasserstein_lipschitz=(0.0, 1.0),
            dissipativity=Dissipativity(alpha=2.0 * self.k),
        )

    def statistics(self, y: np.ndarray) -> np.ndarray:
        return np.zeros(np.shape(y)[:-1] + (0,))

    def value_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return 0.5 * self.k * np.sum(x**2, axis=-1)

    def grad_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.k * np.asarray(x, dtype=float)

    def dvalue_ds(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return np.zeros(np.shape(x)[:-1] + (0,))

    def stat_grad(self, y: np.ndarray) -> np.ndarray:
        return np.zeros(np.shape(y)[:-1] + (0, self.dim))

    def analytic_mfe(self) -> Optional[DiscreteMeasure]:
        return _origin(self.dim)


class LQCost(StatisticCost):
    """F(x, m) = a|x|^2 / 2 + b x . mean(m).

    Gamma_DM = a E|dx|^2 + b |E dx|^2, so l_F = a + min(b, 0).
    """

    name: ClassVar[str] = "lq"

    a: float = Field(default=1.0, gt=0)
    b: float = 0.5

    @property
    def constants(self) -> CostConstants:
        a, b = self.a, abs(self.b)
        return CostConstants(
            dm_constant=self.a + min(self.b, 0.0),
            convexity_constant=self.a,
            lipschitz_bound=self.a,
            wasserstein_lipschitz=(b, 1.0),
            dissipativity=Dissipativity(alpha=2.0 * (a - b), c1=0.0, c2=b) if a > b else None,
        )

    def statistics(self, y: np.ndarray) -> np.ndarray:
        return np.asarray(y, dtype=float)

    def value_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return 0.5 * self.a * np.sum(x**2, axis=-1) + self.b * np.sum(x * s, axis=-1)

    def grad_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.a * x + self.b * s

    def dvalue_ds(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.b * np.asarray(x, dtype=float)

    def stat_grad(self, y: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.eye(self.dim), np.shape(y)[:-1] + (self.dim, self.dim))

    def analytic_mfe(self) -> Optional[DiscreteMeasure]:
        if self.a + self.b == 0:
            return None
        return _origin(self.dim)


class WeakDMCost(StatisticCost):
    """F(x, m) = a|x|^2 / 2 + b x . mean(m) / (1 + |m|_1), with |m|_1 = int |y| dm.

    The interaction weight decays with the first absolute moment; the cost
    satisfies the weak displacement bound with c_F = a - 2|b|. The default
    a = 2|b| sits on the boundary c_F = 0, where only the weak bound holds.
    """

    name: ClassVar[str] = "weak_dm"

    a: float = Field(default=0.2, gt=0)
    b: float = 0.1

    @property
    def constants(self) -> CostConstants:
        a, b = self.a, abs(self.b)
        c_f = a - 2.0 * b
        return CostConstants(
            dm_constant=c_f,
            convexity_constant=a,
            lipschitz_bound=a,
            wasserstein_lipschitz=(2.0 * b, 1.0),
            dissipativity=Dissipativity(alpha=2.0 * (a - b), c1=0.0, c2=b) if a > b else None,
            weak_dm_constant=c_f,
        )

    def statistics(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return np.concatenate([y, np.linalg.norm(y, axis=-1, keepdims=True)], axis=-1)

    def _weight(self, s: np.ndarray) -> np.ndarray:
        return 1.0 / (1.0 + s[..., -1:])

    def value_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        drift = self.b * s[..., :-1] * self._weight(s)
        return 0.5 * self.a * np.sum(x**2, axis=-1) + np.sum(x * drift, axis=-1)

    def grad_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.a * x + self.b * s[..., :-1] * self._weight(s)

    def dvalue_ds(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        w = self._weight(s)
        d_mean = self.b * x * w
        d_abs = -self.b * np.sum(x * s[..., :-1], axis=-1, keepdims=True) * w**2
        return np.concatenate([d_mean, d_abs], axis=-1)

    def stat_grad(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        norm = np.linalg.norm(y, axis=-1, keepdims=True)
        unit = np.divide(y, norm, out=np.zeros_like(y), where=norm > 0)
        eye = np.broadcast_to(np.eye(self.dim), y.shape[:-1] + (self.dim, self.dim))
        return np.concatenate([eye, unit[..., None, :]], axis=-2)

    def analytic_mfe(self) -> Optional[DiscreteMeasure]:
        return _origin(self.dim)
