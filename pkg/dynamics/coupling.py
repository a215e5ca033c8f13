"""Synchronous couplings: two N-particle systems, and particles against their mean-field limit."""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from core.errors import ConfigError
from dynamics.engine import NoiseWiring, SimulationResult, System, euler_maruyama
from dynamics.mean_field import lq_euler_means
from dynamics.noise import NoiseSource, PhiloxNoise
from dynamics.particles import (
    InitialState,
    gaussian_initial,
    langevin_drift,
    replica_initial,
    warn_if_not_contracting,
)
from games.instance import GameInstance
from measures.base import particle_sum
from schemas.config import SdeConfig

PROXY_FACTOR = 8


class MeanFieldReference(BaseModel):
    """Where the law m_{X_t} of the mean-field particles comes from."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["exact_lq", "proxy"] = "exact_lq"
    size: Optional[int] = Field(default=None, ge=1)

    @classmethod
    def exact_lq(cls) -> "MeanFieldReference":
        return cls(kind="exact_lq")

    @classmethod
    def proxy(cls, size: int) -> "MeanFieldReference":
        return cls(kind="proxy", size=size)


def mean_gap(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """mean_i |X^i - Y^i|^2 per replica."""
    return particle_sum(np.sum((x - y) ** 2, axis=-1, keepdims=True))[:, 0] / x.shape[1]


def simulate_coupled_pair(
    instance: GameInstance,
    n: int,
    x0: InitialState,
    y0: InitialState,
    cfg: SdeConfig,
    noise: Optional[NoiseSource] = None,
    workers: Optional[int] = None,
) -> SimulationResult:
    """Two interacting systems driven by identical increments; records `gap` = mean |X - Y|^2."""
    warn_if_not_contracting(instance)
    dim = instance.dim
    xb = replica_initial(x0, cfg.replicas, n, dim)
    yb = replica_initial(y0, cfg.replicas, n, dim)
    noise = noise or PhiloxNoise(cfg.seed)

    return euler_maruyama(
        cfg,
        instance.sigma,
        dim,
        init=lambda replicas: [xb[replicas].copy(), yb[replicas].copy()],
        systems=[
            System(drift=lambda states, k: langevin_drift(instance, states[0]), noise=0),
            System(drift=lambda states, k: langevin_drift(instance, states[1]), noise=0),
        ],
        wiring=[NoiseWiring(noise, n)],
        stats=lambda states: {"gap": mean_gap(states[0], states[1])},
        workers=workers,
        name=f"coupled_pair:{instance.cost.name}",
    )


def simulate_poc_coupling(
    instance: GameInstance,
    n: int,
    cfg: SdeConfig,
    reference: MeanFieldReference,
    init_mean: float = 0.0,
    init_scale: float = 1.0,
    workers: Optional[int] = None,
) -> SimulationResult:
    """
    N interacting particles next to N mean-field particles sharing their increments.

    Both start from the same i.i.d. N(init_mean, init_scale^2) draw. The
    mean-field drift reads m_{X_t} from the reference: the exact LQ law mean
    of the Euler scheme, or an independent proxy system of M >= 8N particles
    with its own seed stream. Records `scaled_gap` = N mean_i |X^{i,N} - X^i|^2.
    """
    dim = instance.dim
    cost, potential, sigma = instance.cost, instance.potential, instance.sigma
    x0 = gaussian_initial(n, dim, cfg.replicas, cfg.seed, init_mean, init_scale)
    noise = PhiloxNoise(cfg.seed)

    def particle_drift(states: list[np.ndarray], k: int) -> np.ndarray:
        return langevin_drift(instance, states[0])

    if reference.kind == "exact_lq":
        means = lq_euler_means(instance, np.full(dim, init_mean), cfg.dt, cfg.n_steps)

        def limit_drift(states: list[np.ndarray], k: int) -> np.ndarray:
            x = states[1]
            law = np.broadcast_to(means[k], (x.shape[0], 1, dim))
            return cost.grad_against(x, law) + sigma * potential.grad(x)

        def init(replicas: np.ndarray) -> list[np.ndarray]:
            return [x0[replicas].copy(), x0[replicas].copy()]

        systems = [System(particle_drift, 0), System(limit_drift, 0)]
        wiring = [NoiseWiring(noise, n)]
    else:
        size = reference.size or PROXY_FACTOR * n
        if size < PROXY_FACTOR * n:
            raise ConfigError(
                f"proxy reference needs M >= {PROXY_FACTOR}N = {PROXY_FACTOR * n}, got M={size}",
                size=size,
                n=n,
            )
        z0 = gaussian_initial(size, dim, cfg.replicas, cfg.seed, init_mean, init_scale, tag="proxy-init")

        def limit_drift(states: list[np.ndarray], k: int) -> np.ndarray:
            x = states[1]
            return cost.grad_against(x, states[2]) + sigma * potential.grad(x)

        def proxy_drift(states: list[np.ndarray], k: int) -> np.ndarray:
            return langevin_drift(instance, states[2])

        def init(replicas: np.ndarray) -> list[np.ndarray]:
            return [x0[replicas].copy(), x0[replicas].copy(), z0[replicas].copy()]

        systems = [System(particle_drift, 0), System(limit_drift, 0), System(proxy_drift, 1)]
        wiring = [NoiseWiring(noise, n), NoiseWiring(PhiloxNoise(cfg.seed, "proxy"), size)]

    return euler_maruyama(
        cfg,
        sigma,
        dim,
        init=init,
        systems=systems,
        wiring=wiring,
        stats=lambda states: {"scaled_gap": n * mean_gap(states[0], states[1])},
        workers=workers,
        name=f"poc:{cost.name}:{reference.kind}",
    )
