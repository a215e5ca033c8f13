"""Closed-form Gaussian McKean-Vlasov flow for the linear-quadratic game."""

from typing import Literal

import numpy as np

from core.errors import ConfigError
from games.builtin.linear_quadratic import LQCost
from games.instance import GameInstance
from games.potentials import GaussianPotential


def lq_parameters(instance: GameInstance) -> tuple[float, float, float]:
    """(a, b, l_U) of an LQ cost under a Gaussian confinement."""
    if not isinstance(instance.cost, LQCost):
        raise ConfigError(f"closed-form flow needs the lq cost, got {instance.cost.name!r}")
    if not isinstance(instance.potential, GaussianPotential):
        raise ConfigError(f"closed-form flow needs the gaussian potential, got {instance.potential.name!r}")
    return instance.cost.a, instance.cost.b, instance.potential.convexity_constant


def mean_field_flow_lq(
    instance: GameInstance,
    t: float,
    mean0: float = 0.0,
    var0: float = 1.0,
) -> tuple[float, float]:
    """Per-coordinate mean and variance of X_t started from N(mean0, var0).

    The mean decays at rate a + b + sigma l_U; the variance relaxes to
    sigma / (a + sigma l_U) at rate 2(a + sigma l_U).
    """
    if t < 0 or var0 < 0:
        raise ConfigError(f"need t >= 0 and var0 >= 0, got t={t}, var0={var0}")
    a, b, ell = lq_parameters(instance)
    sigma = instance.sigma
    kappa = a + sigma * ell
    mean = mean0 * np.exp(-(kappa + b) * t)
    v_inf = sigma / kappa
    var = v_inf + (var0 - v_inf) * np.exp(-2.0 * kappa * t)
    return float(mean), float(var)


def lq_euler_means(instance: GameInstance, mean0: np.ndarray, dt: float, steps: int) -> np.ndarray:
    """Law mean of the Euler-discretized McKean-Vlasov particle at steps 0..steps, shape (steps + 1, d).

    The noise is centred, so the mean follows the deterministic recursion
    mu_{k+1} = (1 - (a + b + sigma l_U) dt) mu_k exactly.
    """
    a, b, ell = lq_parameters(instance)
    factor = 1.0 - (a + b + instance.sigma * ell) * dt
    mean0 = np.atleast_1d(np.asarray(mean0, dtype=float))
    return mean0[None, :] * factor ** np.arange(steps + 1)[:, None]


def lq_coupled_rate(
    instance: GameInstance,
    n: int,
    offsets: Literal["centered", "constant"] = "centered",
) -> float:
    """Exact decay rate of mean |X - Y|^2 under synchronous coupling.

    Centered offsets (summing to zero) see the leave-one-out mean move by
    -dX/(N - 1); constant offsets shift every particle and the mean alike.
    """
    a, b, ell = lq_parameters(instance)
    if n < 2:
        raise ConfigError(f"coupled rate needs N >= 2, got {n}")
    sigma_ell = instance.sigma * ell
    if offsets == "centered":
        return 2.0 * (a - b / (n - 1) + sigma_ell)
    if offsets == "constant":
        return 2.0 * (a + b + sigma_ell)
    raise ConfigError(f"unknown offset pattern {offsets!r}")
