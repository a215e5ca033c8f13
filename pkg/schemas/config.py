"""Numeric and run configuration models."""

import json
from pathlib import Path
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.config import get_settings

STEP_ROUNDING = 1e-6


# =============================================================================
# Numeric Configs
# =============================================================================


class SdeConfig(BaseModel):
    """Euler-Maruyama horizon, recording cadence, replicas and seed."""

    model_config = ConfigDict(frozen=True)

    dt: float = Field(gt=0)
    t_end: float = Field(gt=0)
    seed: int = 0
    record_every: int = Field(default=1, ge=1)
    replicas: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def check_steps(self) -> "SdeConfig":
        if self.dt > self.t_end:
            raise ValueError(f"dt={self.dt} exceeds t_end={self.t_end}")
        ratio = self.t_end / self.dt
        if abs(ratio - round(ratio)) > STEP_ROUNDING * max(1.0, ratio):
            raise ValueError(f"t_end/dt = {ratio} is not an integer")
        return self

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @property
    def record_steps(self) -> np.ndarray:
        """Step indices at which statistics are recorded; always includes 0 and the last step."""
        steps = np.arange(0, self.n_steps + 1, self.record_every)
        if steps[-1] != self.n_steps:
            steps = np.append(steps, self.n_steps)
        return steps

    @property
    def record_times(self) -> np.ndarray:
        return self.record_steps * self.dt


class GridSpec(BaseModel):
    """Uniform 1-D grid [lo, hi] with `nodes` points."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float
    nodes: int = Field(ge=3)

    @model_validator(mode="after")
    def check_domain(self) -> "GridSpec":
        if not self.lo < self.hi:
            raise ValueError(f"empty grid [{self.lo}, {self.hi}]")
        return self

    @classmethod
    def from_settings(cls) -> "GridSpec":
        settings = get_settings()
        return cls(lo=settings.grid_lo, hi=settings.grid_hi, nodes=settings.grid_nodes)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.nodes)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.nodes - 1)


# =============================================================================
# Run Config
# =============================================================================


def _split(v: Any) -> Any:
    if isinstance(v, str):
        return [item.strip() for item in v.split(",") if item.strip()]
    return v


class RunConfig(BaseModel):
    """Every scalar an experiment may read; built from a key=value file plus flags."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    experiment: str
    game: str = "lq"
    game_params: dict[str, Any] = Field(default_factory=dict)
    potential: str = "gaussian"
    potential_params: dict[str, Any] = Field(default_factory=dict)

    sigma: float = Field(default=0.25, gt=0)
    sigmas: list[float] = Field(default_factory=lambda: [0.2, 0.1, 0.05, 0.025])
    n: int = Field(default=100, ge=1)
    n_list: list[int] = Field(default_factory=lambda: [50, 100, 200, 400])

    dt: float = Field(default_factory=lambda: get_settings().default_dt, gt=0)
    t_end: float = Field(default=4.0, gt=0)
    record_every: int = Field(default=10, ge=1)
    replicas: int = Field(default=1, ge=1)
    seed: int = 0
    seeds: int = Field(default=32, ge=1)

    grid_lo: float = Field(default_factory=lambda: get_settings().grid_lo)
    grid_hi: float = Field(default_factory=lambda: get_settings().grid_hi)
    grid_nodes: int = Field(default_factory=lambda: get_settings().grid_nodes, ge=3)
    tol: float = Field(default_factory=lambda: get_settings().fixed_point_tol, gt=0)
    damping: float = Field(default_factory=lambda: get_settings().fixed_point_damping, gt=0, le=1)
    max_iter: int = Field(default_factory=lambda: get_settings().fixed_point_max_iter, ge=1)

    trials: int = Field(default=10_000, ge=1)
    samples: int = Field(default=10_000, ge=1)
    r_list: list[float] = Field(default_factory=list)
    slack: float = Field(default=0.15, ge=0, lt=1)
    reference: Literal["exact_lq", "proxy"] = "exact_lq"
    proxy_factor: int = Field(default=8, ge=8)
    p: float = Field(default=1.5, ge=1, lt=2)
    offset: float = 1.0
    t_min: float = Field(default=1.0, gt=0)
    init_scale: float = Field(default=1.0, ge=0)
    calibrated_c: Optional[float] = Field(default=None, ge=0)
    refine: bool = False
    snapshots: bool = False
    bench_n: list[int] = Field(default_factory=lambda: [10, 100, 1000])
    bench_steps: int = Field(default=20, ge=1)

    output_dir: Optional[Path] = None
    workers: Optional[int] = Field(default=None, ge=1)

    @field_validator("sigmas", "n_list", "r_list", "bench_n", mode="before")
    @classmethod
    def parse_lists(cls, v: Any) -> Any:
        return _split(v)

    @field_validator("sigmas")
    @classmethod
    def check_sigmas(cls, v: list[float]) -> list[float]:
        if any(s <= 0 for s in v):
            raise ValueError("sigmas must be positive")
        if any(b >= a for a, b in zip(v, v[1:])):
            raise ValueError("sigmas must be strictly decreasing")
        return v

    @field_validator("n_list")
    @classmethod
    def check_n_list(cls, v: list[int]) -> list[int]:
        if any(n < 1 for n in v):
            raise ValueError("particle counts must be positive")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("n_list must be strictly increasing")
        return v

    @field_validator("game")
    @classmethod
    def check_game(cls, v: str) -> str:
        from games.catalog import builtin_games, suggest

        names = list(builtin_games())
        if v not in names:
            hint = suggest(v, names)
            raise ValueError(f"unknown game {v!r}" + (f"; did you mean: {', '.join(hint)}?" if hint else ""))
        return v

    def sde(self, t_end: Optional[float] = None, replicas: Optional[int] = None) -> SdeConfig:
        return SdeConfig(
            dt=self.dt,
            t_end=t_end if t_end is not None else self.t_end,
            seed=self.seed,
            record_every=self.record_every,
            replicas=replicas if replicas is not None else self.replicas,
        )

    def grid(self) -> GridSpec:
        return GridSpec(lo=self.grid_lo, hi=self.grid_hi, nodes=self.grid_nodes)

    def canonical_json(self) -> str:
        """Stable encoding of everything that influences results."""
        data = self.model_dump(mode="json", exclude={"output_dir", "workers"})
        return json.dumps(data, sort_keys=True, separators=(",", ":"))
