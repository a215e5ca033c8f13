"""Gaussian increments keyed by (seed, stream tag, replica).

Each replica owns a counter-based Philox generator, and every time step
draws one (N, d) block from it. Which worker advances a replica therefore
has no influence on the numbers it sees. Particles are not keyed on their
own: changing N shifts every later block, so runs at different N share only
their first step.
"""

import zlib
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np


class NoiseStream(ABC):
    @abstractmethod
    def draw(self) -> np.ndarray:
        """Next (N, d) block of standard normals."""


class NoiseSource(ABC):
    """Factory of per-replica streams for systems of N particles in R^d."""

    @abstractmethod
    def stream(self, replica: int, n: int, d: int) -> NoiseStream:
        pass


def stream_key(seed: int, tag: str, replica: int) -> np.ndarray:
    """128-bit Philox key derived from the seed, a stable tag hash and the replica."""
    tag_id = zlib.crc32(tag.encode())
    return np.random.SeedSequence([int(seed), tag_id, int(replica)]).generate_state(2, np.uint64)


class _PhiloxStream(NoiseStream):
    def __init__(self, key: np.ndarray, n: int, d: int):
        self._gen = np.random.Generator(np.random.Philox(key=key))
        self._shape = (n, d)

    def draw(self) -> np.ndarray:
        return self._gen.standard_normal(self._shape)


class PhiloxNoise(NoiseSource):
    def __init__(self, seed: int, tag: str = "particles"):
        self.seed = seed
        self.tag = tag

    def stream(self, replica: int, n: int, d: int) -> NoiseStream:
        return _PhiloxStream(stream_key(self.seed, self.tag, replica), n, d)

    def normals(self, replica: int, shape: tuple[int, ...]) -> np.ndarray:
        """One-off draw from this source's key, e.g. for initial conditions."""
        gen = np.random.Generator(np.random.Philox(key=stream_key(self.seed, self.tag, replica)))
        return gen.standard_normal(shape)


class _ZeroStream(NoiseStream):
    def __init__(self, n: int, d: int):
        self._shape = (n, d)

    def draw(self) -> np.ndarray:
        return np.zeros(self._shape)


class ZeroNoise(NoiseSource):
    """Noise switched off; the dynamics become the deterministic gradient flow."""

    def stream(self, replica: int, n: int, d: int) -> NoiseStream:
        return _ZeroStream(n, d)


class _PermutedStream(NoiseStream):
    def __init__(self, inner: NoiseStream, perm: np.ndarray):
        self._inner = inner
        self._perm = perm

    def draw(self) -> np.ndarray:
        return self._inner.draw()[self._perm]


class PermutedNoise(NoiseSource):
    """Relabels the particles of another source: particle i receives the block row perm[i]."""

    def __init__(self, base: NoiseSource, perm: np.ndarray, replicas: Optional[list[int]] = None):
        self.base = base
        self.perm = np.asarray(perm, dtype=int)
        self.replicas = replicas

    def stream(self, replica: int, n: int, d: int) -> NoiseStream:
        inner = self.base.stream(replica, n, d)
        if self.replicas is not None and replica not in self.replicas:
            return inner
        return _PermutedStream(inner, self.perm)
