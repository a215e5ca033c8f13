"""Rank-one interactions F(x, m) = phi(x) int psi dm + g(x) in one dimension."""

from functools import lru_cache
from typing import ClassVar, Optional

import numpy as np
from pydantic import Field
from scipy.optimize import brentq

from games.base import CostConstants, Dissipativity, StatisticCost
from games.finite import FinitePlayerGame, symmetrize
from measures.discrete import DiscreteMeasure

# max |tanh''| = 4 / (3 sqrt 3)
TANH_CURVATURE = 0.7698003589195010


class RankOneCost(StatisticCost):
    """F(x, m) = tanh(x) int tanh dm + x^2 / 2.

    Gamma_LL = (int tanh d(m - m'))^2 >= 0.
    """

    name: ClassVar[str] = "rank_one"

    dim: int = Field(default=1, ge=1, le=1)

    @property
    def constants(self) -> CostConstants:
        return CostConstants(
            dm_constant=-TANH_CURVATURE,
            convexity_constant=1.0 - TANH_CURVATURE,
            lipschitz_bound=1.0 + TANH_CURVATURE,
            wasserstein_lipschitz=(1.0, 1.0),
            dissipativity=Dissipativity(alpha=2.0, c1=-0.9, c2=0.0),
        )

    def statistics(self, y: np.ndarray) -> np.ndarray:
        return np.tanh(np.asarray(y, dtype=float))

    def value_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        x = x[..., 0]
        return np.tanh(x) * s[..., 0] + 0.5 * x**2

    def grad_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return (1.0 - np.tanh(x) ** 2) * s + x

    def dvalue_ds(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return np.tanh(np.asarray(x, dtype=float))

    def stat_grad(self, y: np.ndarray) -> np.ndarray:
        return (1.0 - np.tanh(np.asarray(y, dtype=float)) ** 2)[..., None]

    def analytic_mfe(self) -> Optional[DiscreteMeasure]:
        return DiscreteMeasure.dirac(0.0)


@lru_cache
def sincos_root() -> float:
    """Unique root of 2x + cos(x)^2 in (-1/2, 0)."""
    return float(brentq(lambda x: 2.0 * x + np.cos(x) ** 2, -0.5, 0.0, xtol=1e-15, rtol=4 * np.finfo(float).eps))


class SincosCost(StatisticCost):
    """F(x, m) = x^2 + sin(x) int cos dm; with N = 2 this is the sin-cos two-player game."""

    name: ClassVar[str] = "sincos"

    dim: int = Field(default=1, ge=1, le=1)

    @property
    def constants(self) -> CostConstants:
        return CostConstants(
            dm_constant=0.0,
            convexity_constant=1.0,
            lipschitz_bound=3.0,
            wasserstein_lipschitz=(1.0, 1.0),
            dissipativity=Dissipativity(alpha=3.0, c1=-1.0, c2=0.0),
        )

    def statistics(self, y: np.ndarray) -> np.ndarray:
        return np.cos(np.asarray(y, dtype=float))

    def value_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        x = x[..., 0]
        return x**2 + np.sin(x) * s[..., 0]

    def grad_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return 2.0 * x + np.cos(x) * s

    def dvalue_ds(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        return np.sin(np.asarray(x, dtype=float))

    def stat_grad(self, y: np.ndarray) -> np.ndarray:
        return (-np.sin(np.asarray(y, dtype=float)))[..., None]

    def analytic_mfe(self) -> Optional[DiscreteMeasure]:
        return DiscreteMeasure.dirac(sincos_root())


def sincos2p() -> FinitePlayerGame:
    """F_1 = x^2 + sin(x) cos(y), F_2 = y^2 + sin(y) cos(x)."""
    return symmetrize(SincosCost(), 2, name="sincos2p")
