"""Confinement potentials U with reference measure nu(dx) = exp(-U(x)) dx."""

import math
from abc import ABC, abstractmethod
from typing import ClassVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from core.errors import MeasureError


class Potential(BaseModel, ABC):
    """Confinement U on R^d.

    `dissipativity` holds (c1, c2) with x.grad U(x) >= c1|x|^2 - c2.
    `log_normalizer` is already folded into `value`, so exp(-U) integrates
    to one whenever `proper` is set.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: ClassVar[str] = "potential"
    proper: ClassVar[bool] = True

    dim: int = Field(default=1, ge=1)

    @property
    @abstractmethod
    def convexity_constant(self) -> float:
        """l_U."""

    @property
    @abstractmethod
    def dissipativity(self) -> tuple[float, float]:
        """(c1, c2)."""

    @property
    @abstractmethod
    def log_normalizer(self) -> float:
        """Constant added to U so that nu has unit mass."""

    @abstractmethod
    def value(self, x: np.ndarray) -> np.ndarray:
        """U(x) for x of shape (..., d)."""

    @abstractmethod
    def grad(self, x: np.ndarray) -> np.ndarray:
        """grad U(x), shape (..., d)."""

    def _check_dim(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise MeasureError(f"{self.name} potential expects points in R^{self.dim}, got {x.shape}")
        return x


class GaussianPotential(Potential):
    """U(x) = |x|^2 / (2 s^2) + (d/2) log(2 pi s^2), so nu = N(0, s^2 I)."""

    name: ClassVar[str] = "gaussian"

    scale: float = Field(default=1.0, gt=0)

    @property
    def convexity_constant(self) -> float:
        return 1.0 / self.scale**2

    @property
    def dissipativity(self) -> tuple[float, float]:
        return (1.0 / self.scale**2, 0.0)

    @property
    def log_normalizer(self) -> float:
        return 0.5 * self.dim * math.log(2.0 * math.pi * self.scale**2)

    def value(self, x: np.ndarray) -> np.ndarray:
        x = self._check_dim(x)
        return np.sum(x**2, axis=-1) / (2.0 * self.scale**2) + self.log_normalizer

    def grad(self, x: np.ndarray) -> np.ndarray:
        return self._check_dim(x) / self.scale**2


class LogCoshPotential(Potential):
    """U(x) = sum_j log cosh(x_j) + d log(pi): convex, not strongly convex."""

    name: ClassVar[str] = "log_cosh"

    @property
    def convexity_constant(self) -> float:
        return 0.0

    @property
    def dissipativity(self) -> tuple[float, float]:
        return (0.0, 0.0)

    @property
    def log_normalizer(self) -> float:
        return self.dim * math.log(math.pi)

    def value(self, x: np.ndarray) -> np.ndarray:
        x = self._check_dim(x)
        log_cosh = np.logaddexp(x, -x) - math.log(2.0)
        return np.sum(log_cosh, axis=-1) + self.log_normalizer

    def grad(self, x: np.ndarray) -> np.ndarray:
        return np.tanh(self._check_dim(x))


class ZeroPotential(Potential):
    """U = 0. Improper (nu is Lebesgue measure); only for degenerate dynamics."""

    name: ClassVar[str] = "zero"
    proper: ClassVar[bool] = False

    @property
    def convexity_constant(self) -> float:
        return 0.0

    @property
    def dissipativity(self) -> tuple[float, float]:
        return (0.0, 0.0)

    @property
    def log_normalizer(self) -> float:
        return 0.0

    def value(self, x: np.ndarray) -> np.ndarray:
        return np.zeros(self._check_dim(x).shape[:-1])

    def grad(self, x: np.ndarray) -> np.ndarray:
        return np.zeros_like(self._check_dim(x))
