"""Interacting Langevin particle systems."""

from typing import Optional, Union

import numpy as np

from core.errors import ConfigError
from core.logging import get_logger
from dynamics.engine import NoiseWiring, SimulationResult, System, euler_maruyama
from dynamics.noise import NoiseSource, PhiloxNoise
from games.base import MeanFieldCost
from games.instance import GameInstance
from measures.base import BaseMeasure, as_batch, particle_sum
from measures.discrete import EmpiricalMeasure
from measures.wasserstein import wasserstein
from schemas.config import SdeConfig
from schemas.series import ParticleState

logger = get_logger(__name__)

InitialState = Union[ParticleState, np.ndarray]


def interaction_drift(cost: MeanFieldCost, x: np.ndarray) -> np.ndarray:
    """grad_x F(X^i, mu^{N-1}_{X^-i}) per particle; a lone particle sees its own Dirac."""
    if x.shape[1] == 1:
        return cost.grad_against(x, x)
    return cost.grad_loo(x)


def langevin_drift(instance: GameInstance, x: np.ndarray) -> np.ndarray:
    return interaction_drift(instance.cost, x) + instance.sigma * instance.potential.grad(x)


def gaussian_initial(
    n: int,
    dim: int,
    replicas: int,
    seed: int,
    mean: float = 0.0,
    scale: float = 1.0,
    tag: str = "init",
) -> np.ndarray:
    """i.i.d. N(mean, scale^2 I) positions per replica, shape (R, N, d)."""
    source = PhiloxNoise(seed, tag)
    return np.stack([mean + scale * source.normals(r, (n, dim)) for r in range(replicas)])


def replica_initial(x0: InitialState, replicas: int, n: int, dim: int) -> np.ndarray:
    """Broadcast one (N, d) profile to all replicas, or pass an (R, N, d) batch through."""
    arr = x0.positions if isinstance(x0, ParticleState) else np.asarray(x0, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    batch = as_batch(arr)
    if batch.shape[0] == 1:
        batch = np.repeat(batch, replicas, axis=0)
    if batch.shape != (replicas, n, dim):
        raise ConfigError(f"initial state has shape {batch.shape}, expected ({replicas}, {n}, {dim})")
    if not np.all(np.isfinite(batch)):
        raise ConfigError("initial state must be finite")
    return batch


def warn_if_not_contracting(instance: GameInstance) -> None:
    rate = instance.contraction_rate
    if rate <= 0:
        logger.warning(
            "contraction_not_guaranteed",
            cost=instance.cost.name,
            sigma=instance.sigma,
            rate=rate,
        )


def second_moment(x: np.ndarray) -> np.ndarray:
    """Mean of |X^i|^2 over particles, per replica."""
    return particle_sum(np.sum(x**2, axis=-1, keepdims=True))[:, 0] / x.shape[1]


def first_mean(x: np.ndarray) -> np.ndarray:
    """Mean of the first coordinate over particles, per replica."""
    return particle_sum(x[..., :1])[:, 0] / x.shape[1]


def simulate_interacting(
    instance: GameInstance,
    n: int,
    x0: InitialState,
    cfg: SdeConfig,
    noise: Optional[NoiseSource] = None,
    reference: Optional[BaseMeasure] = None,
    snapshots: bool = False,
    workers: Optional[int] = None,
) -> SimulationResult:
    """
    Euler-Maruyama for the symmetric N-particle system.

    Records `second_moment` and `mean` every `cfg.record_every` steps and,
    with a reference measure, `w2_to_reference` between each replica's
    empirical measure and the reference.
    """
    if n < 1:
        raise ConfigError(f"need at least one particle, got N={n}")
    warn_if_not_contracting(instance)
    dim = instance.dim
    batch = replica_initial(x0, cfg.replicas, n, dim)
    noise = noise or PhiloxNoise(cfg.seed)

    def stats(states: list[np.ndarray]) -> dict[str, np.ndarray]:
        x = states[0]
        out = {"second_moment": second_moment(x), "mean": first_mean(x)}
        if reference is not None:
            out["w2_to_reference"] = np.array(
                [wasserstein(EmpiricalMeasure(points=x[r]), reference, p=2.0) for r in range(x.shape[0])]
            )
        return out

    return euler_maruyama(
        cfg,
        instance.sigma,
        dim,
        init=lambda replicas: [batch[replicas].copy()],
        systems=[System(drift=lambda states, k: langevin_drift(instance, states[0]), noise=0)],
        wiring=[NoiseWiring(noise, n)],
        stats=stats,
        workers=workers,
        snapshots=snapshots,
        name=f"interacting:{instance.cost.name}",
    )
