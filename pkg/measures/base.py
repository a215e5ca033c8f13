"""Common view shared by every measure representation."""

from abc import ABC, abstractmethod

import numpy as np
from pydantic import BaseModel, ConfigDict


class BaseMeasure(BaseModel, ABC):
    """A finitely represented probability measure on R^d.

    Every representation exposes its mass as weighted atoms
    (`support`, `weights`) so that costs and statistics can be written once.
    Grid densities expose their nodes with trapezoid weights.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    @abstractmethod
    def support(self) -> np.ndarray:
        """Atom locations, shape (K, d)."""

    @property
    @abstractmethod
    def weights(self) -> np.ndarray:
        """Atom masses, shape (K,), summing to one."""

    @property
    def dim(self) -> int:
        return int(self.support.shape[1])

    def integrate(self, values: np.ndarray) -> float | np.ndarray:
        """Integrate per-atom values (shape (K,) or (K, k)) against the measure."""
        return np.tensordot(self.weights, values, axes=(0, 0))

    def mean(self) -> np.ndarray:
        return np.asarray(self.integrate(self.support), dtype=float)

    def abs_moment(self, k: float) -> float:
        norms = np.linalg.norm(self.support, axis=1)
        return float(self.integrate(norms**k))


def as_points(values: object) -> np.ndarray:
    """Coerce scalars, 1-D sequences or (K, d) arrays to a float (K, d) array."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    elif arr.ndim != 2:
        raise ValueError(f"expected points of shape (K, d), got {arr.shape}")
    return arr


def freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


def particle_sum(values: np.ndarray) -> np.ndarray:
    """Sum (R, N, k) per-particle values over particles, giving (R, k).

    Every replica is reduced along its own contiguous row, so the result
    for one replica does not depend on how many replicas share the batch.
    """
    rows = np.ascontiguousarray(np.moveaxis(values, 1, -1))
    return rows.sum(axis=-1)


def as_batch(x: np.ndarray) -> np.ndarray:
    """Coerce an (N, d) profile or (R, N, d) batch to a float (R, N, d) array."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3:
        raise ValueError(f"expected a batch of shape (R, N, d), got {arr.shape}")
    return arr
