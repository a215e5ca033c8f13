"""Core configuration module using Pydantic Settings."""

import os
from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Library and CLI settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="MFL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Output
    output_root: Path = Field(
        default=Path("runs"),
        description="Directory under which one folder per run is created",
    )

    # Parallelism
    workers: int = Field(
        default_factory=lambda: os.cpu_count() or 1,
        ge=1,
        le=512,
        description="Worker pool size for replicas and parameter grids",
    )

    # Time stepping
    default_dt: float = Field(default=1e-3, gt=0, description="Default Euler step")
    blow_up_threshold: float = Field(
        default=1e8,
        gt=0,
        description="Abort a simulation once any |x| exceeds this value",
    )

    # Grid solver
    grid_lo: float = Field(default=-8.0, description="Left end of the default 1-D grid")
    grid_hi: float = Field(default=8.0, description="Right end of the default 1-D grid")
    grid_nodes: int = Field(default=4001, ge=3, description="Nodes of the default 1-D grid")
    fixed_point_tol: float = Field(default=1e-10, gt=0)
    fixed_point_damping: float = Field(default=0.5, gt=0, le=1)
    fixed_point_max_iter: int = Field(default=500, ge=1)

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING",
        description="Logging level",
    )
    log_format: Literal["json", "console"] = Field(
        default="console",
        description="Log output format",
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def upper_log_level(cls, v: str) -> str:
        """Accept lower-case level names from the environment."""
        return v.upper() if isinstance(v, str) else v

    @model_validator(mode="after")
    def check_grid(self) -> "Settings":
        if self.grid_lo >= self.grid_hi:
            raise ValueError("grid_lo must be smaller than grid_hi")
        return self


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
