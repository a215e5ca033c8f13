"""Abstract mean-field costs F(x, m).

Costs are vectorized over evaluation points: `value(x, m)` takes x of shape
(n, d) and returns (n,), `grad_x(x, m)` returns (n, d). Particle systems are
batched as (R, N, d) arrays (replicas, particles, dimension) and use the
leave-one-out methods, where particle i sees the empirical measure of the
other N - 1 particles of its own replica.

Two structured families override the generic O(N^2) leave-one-out loop:
`StatisticCost` (F depends on m through linear statistics) and `KernelCost`
(F is a confinement plus a pairwise interaction).
"""

from abc import ABC, abstractmethod
from typing import Any, Callable, ClassVar, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.errors import ConfigError, MeasureError
from measures.base import BaseMeasure, as_batch, particle_sum
from measures.discrete import EmpiricalMeasure


class Dissipativity(BaseModel):
    """Constants of 2x.grad F(x,m) >= alpha|x|^2 + c1 + c2(|x|^2 - |m|_2^2).

    |m|_2^2 is the second moment of m. c1 may be negative: costs with
    bounded interaction terms need it.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0)
    c1: float = 0.0
    c2: float = Field(default=0.0, ge=0)


class CostConstants(BaseModel):
    """Constants a cost declares about itself; probes try to refute them."""

    model_config = ConfigDict(frozen=True)

    dm_constant: float = Field(default=0.0, description="displacement semimonotonicity l_F")
    convexity_constant: Optional[float] = Field(default=None, description="convexity of F(., m)")
    lipschitz_bound: Optional[float] = Field(default=None, description="Lipschitz constant of grad_x F")
    wasserstein_lipschitz: Optional[tuple[float, float]] = Field(
        default=None, description="(C_F, p) with |F(x,m) - F(x,m')| <= C_F W_p(m, m')"
    )
    dissipativity: Optional[Dissipativity] = None
    weak_dm_constant: Optional[float] = Field(
        default=None, description="c_F in Gamma_DM >= c_F int|x-x'|^2 / (1 + |m|_1 + |m'|_1)"
    )

    @field_validator("wasserstein_lipschitz")
    @classmethod
    def check_order(cls, v: Optional[tuple[float, float]]) -> Optional[tuple[float, float]]:
        if v is not None:
            c_f, p = v
            if c_f < 0 or not 1.0 <= p < 2.0:
                raise ValueError(f"need C_F >= 0 and p in [1, 2), got {v}")
        return v


class MeanFieldCost(BaseModel, ABC):
    """The map F(x, m) with its x-gradient and declared constants."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    name: ClassVar[str] = "cost"
    # True when leave-one-out drifts cost O(N) per replica
    fast_path: ClassVar[bool] = False

    dim: int = Field(default=1, ge=1)

    @property
    def constants(self) -> CostConstants:
        return CostConstants()

    @abstractmethod
    def value(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        """
        Evaluate F at a set of points.

        Args:
            x: Points of shape (n, d)
            m: Any measure representation

        Returns:
            Array of shape (n,)
        """

    @abstractmethod
    def grad_x(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        """Gradient of F(., m) at x, shape (n, d)."""

    def flat_deriv(self, x: np.ndarray, m: BaseMeasure, y: np.ndarray) -> np.ndarray:
        """Flat derivative delta_m F(x, m)(y), shape (n, K)."""
        raise NotImplementedError(f"{self.name} declares no flat derivative")

    def lions_deriv(self, x: np.ndarray, m: BaseMeasure, y: np.ndarray) -> np.ndarray:
        """Lions derivative D_m F(x, m)(y), shape (n, K, d)."""
        raise NotImplementedError(f"{self.name} declares no Lions derivative")

    @property
    def has_flat_deriv(self) -> bool:
        return type(self).flat_deriv is not MeanFieldCost.flat_deriv

    def analytic_mfe(self) -> Optional[BaseMeasure]:
        """Closed-form mean field equilibrium, when one is known."""
        return None

    def points(self, x: Any) -> np.ndarray:
        """Coerce x to an (n, d) array in this cost's dimension."""
        arr = np.asarray(x, dtype=float)
        if arr.ndim < 2:
            arr = arr.reshape(-1, self.dim)
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise MeasureError(f"{self.name} expects points in R^{self.dim}, got shape {arr.shape}")
        return arr

    # -- leave-one-out (generic O(N^2) path) ------------------------------

    @staticmethod
    def _require_pairs(n: int) -> None:
        if n < 2:
            raise ConfigError(f"leave-one-out measures need N >= 2 particles, got {n}")

    def value_loo(self, x: np.ndarray) -> np.ndarray:
        """F(X^i, mu^{N-1}_{X^-i}) for a batch (R, N, d); returns (R, N)."""
        x = as_batch(x)
        n_rep, n, _ = x.shape
        self._require_pairs(n)
        out = np.empty((n_rep, n))
        for r in range(n_rep):
            for i in range(n):
                others = EmpiricalMeasure(points=np.delete(x[r], i, axis=0))
                out[r, i] = self.value(x[r, i : i + 1], others)[0]
        return out

    def grad_loo(self, x: np.ndarray) -> np.ndarray:
        """grad_x F(X^i, mu^{N-1}_{X^-i}) for a batch (R, N, d)."""
        x = as_batch(x)
        n_rep, n, d = x.shape
        self._require_pairs(n)
        out = np.empty((n_rep, n, d))
        for r in range(n_rep):
            for i in range(n):
                others = EmpiricalMeasure(points=np.delete(x[r], i, axis=0))
                out[r, i] = self.grad_x(x[r, i : i + 1], others)[0]
        return out

    def grad_against(self, x: np.ndarray, cloud: np.ndarray) -> np.ndarray:
        """grad_x F(X^i, mu_Y) with Y the full cloud (R, M, d) of the same replica."""
        x, cloud = as_batch(x), as_batch(cloud)
        out = np.empty_like(x)
        for r in range(x.shape[0]):
            out[r] = self.grad_x(x[r], EmpiricalMeasure(points=cloud[r]))
        return out

    def value_loo_at(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """F(y_g, mu^{N-1}_{x^-i}) for one profile x (N, d) and points y (G, d); returns (N, G)."""
        x, y = self.points(x), self.points(y)
        self._require_pairs(x.shape[0])
        out = np.empty((x.shape[0], y.shape[0]))
        for i in range(x.shape[0]):
            out[i] = self.value(y, EmpiricalMeasure(points=np.delete(x, i, axis=0)))
        return out


class StatisticCost(MeanFieldCost):
    """F(x, m) = f(x, s(m)) with s(m) = int psi dm a vector of k statistics.

    Leave-one-out statistics are the whole-cloud sum minus the particle's own
    term. `value_s` and `grad_s` broadcast over leading axes of x (..., d) and
    s (..., k).
    """

    fast_path: ClassVar[bool] = True

    @abstractmethod
    def statistics(self, y: np.ndarray) -> np.ndarray:
        """psi(y) of shape (..., k) for y of shape (..., d)."""

    @abstractmethod
    def value_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        """f(x, s)."""

    @abstractmethod
    def grad_s(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        """grad_x f(x, s)."""

    def dvalue_ds(self, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Partial derivatives of f in s, shape (..., k)."""
        raise NotImplementedError(f"{self.name} declares no flat derivative")

    def stat_grad(self, y: np.ndarray) -> np.ndarray:
        """Jacobian of psi, shape (..., k, d)."""
        raise NotImplementedError(f"{self.name} declares no Lions derivative")

    def stats_of(self, m: BaseMeasure) -> np.ndarray:
        return np.asarray(m.integrate(self.statistics(m.support)), dtype=float)

    def _stats_for(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        s = self.stats_of(m)
        return np.broadcast_to(s, (x.shape[0], s.shape[0]))

    def value(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        x = self.points(x)
        return self.value_s(x, self._stats_for(x, m))

    def grad_x(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        x = self.points(x)
        return self.grad_s(x, self._stats_for(x, m))

    def flat_deriv(self, x: np.ndarray, m: BaseMeasure, y: np.ndarray) -> np.ndarray:
        x, y = self.points(x), self.points(y)
        return self.dvalue_ds(x, self._stats_for(x, m)) @ self.statistics(y).T

    def lions_deriv(self, x: np.ndarray, m: BaseMeasure, y: np.ndarray) -> np.ndarray:
        x, y = self.points(x), self.points(y)
        return np.einsum("nk,Kkd->nKd", self.dvalue_ds(x, self._stats_for(x, m)), self.stat_grad(y))

    # -- leave-one-out fast path -------------------------------------------

    def _loo_stats(self, x: np.ndarray) -> np.ndarray:
        n = x.shape[1]
        self._require_pairs(n)
        psi = self.statistics(x)
        total = particle_sum(psi)
        return (total[:, None, :] - psi) / (n - 1)

    def value_loo(self, x: np.ndarray) -> np.ndarray:
        x = as_batch(x)
        return self.value_s(x, self._loo_stats(x))

    def grad_loo(self, x: np.ndarray) -> np.ndarray:
        x = as_batch(x)
        return self.grad_s(x, self._loo_stats(x))

    def grad_against(self, x: np.ndarray, cloud: np.ndarray) -> np.ndarray:
        x, cloud = as_batch(x), as_batch(cloud)
        s = particle_sum(self.statistics(cloud)) / cloud.shape[1]
        return self.grad_s(x, np.broadcast_to(s[:, None, :], x.shape[:2] + s.shape[-1:]))

    def value_loo_at(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = self.points(x), self.points(y)
        s = self._loo_stats(x[None])[0]
        n, g = x.shape[0], y.shape[0]
        return self.value_s(
            np.broadcast_to(y[None], (n, g, self.dim)),
            np.broadcast_to(s[:, None, :], (n, g, s.shape[-1])),
        )


class KernelCost(MeanFieldCost):
    """F(x, m) = g(x) + int kappa(x - y) m(dy).

    The leave-one-out interaction is summed over pairs j != i of the same
    replica with the self term removed, O(N^2) per replica.
    """

    block_rows: ClassVar[int] = 1024

    @abstractmethod
    def confinement(self, x: np.ndarray) -> np.ndarray:
        """g(x), shape (...,)."""

    @abstractmethod
    def confinement_grad(self, x: np.ndarray) -> np.ndarray:
        """grad g(x), shape (..., d)."""

    @abstractmethod
    def kernel(self, z: np.ndarray) -> np.ndarray:
        """kappa(z), shape (...,) for z of shape (..., d)."""

    @abstractmethod
    def kernel_grad(self, z: np.ndarray) -> np.ndarray:
        """grad kappa(z), shape (..., d)."""

    def value(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        x = self.points(x)
        support, weights = m.support, m.weights
        out = self.confinement(x)
        for start in range(0, x.shape[0], self.block_rows):
            block = x[start : start + self.block_rows]
            out[start : start + self.block_rows] += self.kernel(block[:, None, :] - support[None]) @ weights
        return out

    def grad_x(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        x = self.points(x)
        support, weights = m.support, m.weights
        out = self.confinement_grad(x)
        for start in range(0, x.shape[0], self.block_rows):
            block = x[start : start + self.block_rows]
            z = block[:, None, :] - support[None]
            out[start : start + self.block_rows] += np.einsum("k,nkd->nd", weights, self.kernel_grad(z))
        return out

    def flat_deriv(self, x: np.ndarray, m: BaseMeasure, y: np.ndarray) -> np.ndarray:
        x, y = self.points(x), self.points(y)
        return self.kernel(x[:, None, :] - y[None])

    def lions_deriv(self, x: np.ndarray, m: BaseMeasure, y: np.ndarray) -> np.ndarray:
        x, y = self.points(x), self.points(y)
        return -self.kernel_grad(x[:, None, :] - y[None])

    # -- leave-one-out pairwise path ----------------------------------------

    def value_loo(self, x: np.ndarray) -> np.ndarray:
        x = as_batch(x)
        n_rep, n, _ = x.shape
        self._require_pairs(n)
        out = np.empty((n_rep, n))
        for r in range(n_rep):
            pair = self.kernel(x[r][:, None, :] - x[r][None])
            np.fill_diagonal(pair, 0.0)
            out[r] = self.confinement(x[r]) + pair.sum(axis=1) / (n - 1)
        return out

    def grad_loo(self, x: np.ndarray) -> np.ndarray:
        x = as_batch(x)
        n_rep, n, _ = x.shape
        self._require_pairs(n)
        out = np.empty_like(x)
        idx = np.arange(n)
        for r in range(n_rep):
            pair = self.kernel_grad(x[r][:, None, :] - x[r][None])
            pair[idx, idx, :] = 0.0
            out[r] = self.confinement_grad(x[r]) + pair.sum(axis=1) / (n - 1)
        return out

    def grad_against(self, x: np.ndarray, cloud: np.ndarray) -> np.ndarray:
        x, cloud = as_batch(x), as_batch(cloud)
        out = np.empty_like(x)
        for r in range(x.shape[0]):
            pair = self.kernel_grad(x[r][:, None, :] - cloud[r][None])
            out[r] = self.confinement_grad(x[r]) + pair.mean(axis=1)
        return out

    def value_loo_at(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = self.points(x), self.points(y)
        n = x.shape[0]
        self._require_pairs(n)
        pair = self.kernel(y[:, None, :] - x[None])
        total = pair.sum(axis=1)
        return self.confinement(y)[None, :] + (total[None, :] - pair.T) / (n - 1)


class FunctionCost(MeanFieldCost):
    """A cost assembled from user callables; uses the generic O(N^2) paths."""

    name: ClassVar[str] = "function"

    value_fn: Callable[[np.ndarray, BaseMeasure], Any]
    grad_fn: Callable[[np.ndarray, BaseMeasure], Any]
    declared: CostConstants = Field(default_factory=CostConstants)
    mfe: Optional[BaseMeasure] = None

    @property
    def constants(self) -> CostConstants:
        return self.declared

    def analytic_mfe(self) -> Optional[BaseMeasure]:
        return self.mfe

    def value(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        x = self.points(x)
        return np.asarray(self.value_fn(x, m), dtype=float).reshape(x.shape[0])

    def grad_x(self, x: np.ndarray, m: BaseMeasure) -> np.ndarray:
        x = self.points(x)
        return np.asarray(self.grad_fn(x, m), dtype=float).reshape(x.shape[0], self.dim)
