"""Agent-wise gradient descent for finite-player games and its Cesaro averages."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.config import get_settings
from core.errors import BlowUpError, ConfigError
from core.logging import get_logger
from games.finite import FinitePlayerGame

logger = get_logger(__name__)


class Trajectory(BaseModel):
    """States (T, N, d) at increasing times (T,)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    times: np.ndarray
    states: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def at(self, t: float) -> np.ndarray:
        """Linear interpolation between recorded states."""
        k = int(np.clip(np.searchsorted(self.times, t, side="right") - 1, 0, len(self.times) - 2))
        t0, t1 = self.times[k], self.times[k + 1]
        w = (t - t0) / (t1 - t0)
        return (1.0 - w) * self.states[k] + w * self.states[k + 1]


def ode_gradient_flow(
    game: FinitePlayerGame,
    x0: np.ndarray,
    dt: float,
    t_end: float,
    record_every: int = 1,
    blow_up: Optional[float] = None,
) -> Trajectory:
    """Explicit Euler for du^i = -grad_{x_i} F_i(u) dt."""
    if dt <= 0 or t_end <= 0 or dt > t_end:
        raise ConfigError(f"need 0 < dt <= t_end, got dt={dt}, t_end={t_end}")
    lip = game.lipschitz_bound
    if lip is not None and dt * lip >= 1.0:
        raise ConfigError(f"dt * L = {dt * lip:g} must stay below 1", dt=dt, lipschitz=lip)
    blow_up = blow_up or get_settings().blow_up_threshold

    n_steps = int(round(t_end / dt))
    u = game.profile(x0).copy()
    times, states = [0.0], [u.copy()]
    for k in range(1, n_steps + 1):
        u = u - dt * game.stacked_grad(u)
        max_abs = float(np.max(np.abs(u)))
        if not np.isfinite(max_abs) or max_abs > blow_up:
            logger.error("gradient_flow_blow_up", game=game.name, step=k, max_abs=max_abs)
            raise BlowUpError(step=k, time=k * dt, max_abs=max_abs)
        if k % record_every == 0 or k == n_steps:
            times.append(k * dt)
            states.append(u.copy())
    logger.debug("gradient_flow_done", game=game.name, steps=n_steps)
    return Trajectory(times=np.asarray(times), states=np.stack(states))


def cesaro_average(trajectory: Trajectory, t: float, t_start: float = 0.0) -> np.ndarray:
    """(1/(t - t_start)) int_{t_start}^t u_s ds by the trapezoid rule over recorded states."""
    times = trajectory.times
    span_tol = 1e-9 * max(1.0, abs(times[-1]))
    if t_start < times[0] - span_tol or t > times[-1] + span_tol or t < t_start:
        raise ConfigError(f"window [{t_start}, {t}] outside the trajectory span [{times[0]}, {times[-1]}]")
    t = min(t, float(times[-1]))
    t_start = max(t_start, float(times[0]))
    if t == t_start:
        return trajectory.at(t)
    inner = (times > t_start) & (times < t)
    grid = np.concatenate([[t_start], times[inner], [t]])
    values = np.concatenate([trajectory.at(t_start)[None], trajectory.states[inner], trajectory.at(t)[None]])
    widths = np.diff(grid)
    integral = np.tensordot(widths, 0.5 * (values[:-1] + values[1:]), axes=(0, 0))
    return integral / (t - t_start)
