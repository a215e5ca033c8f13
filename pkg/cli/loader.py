"""Run configuration assembly: command defaults, key=value files and flags."""

import hashlib
from pathlib import Path
from typing import Any, Iterable, Optional

from dotenv import dotenv_values

from core.config import get_settings
from core.errors import ConfigError
from games.base import MeanFieldCost
from games.catalog import build_cost, build_instance
from games.instance import GameInstance
from schemas.config import RunConfig

GAME_PREFIX = "param."
POTENTIAL_PREFIX = "potential."


def _key(raw: str) -> str:
    return raw.strip().lower().replace("-", "_")


def parse_assignments(items: Iterable[str], label: str = "--param") -> dict[str, str]:
    """`name=value` strings to a mapping; values stay strings for pydantic to coerce."""
    out: dict[str, str] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ConfigError(f"{label} expects name=value, got {item!r}")
        out[_key(name)] = value.strip()
    return out


def read_config_file(path: Path | str) -> dict[str, Any]:
    """
    Flat key=value run file.

    Keys `param.<name>` and `potential.<name>` collect game and potential
    parameters; every other key names a RunConfig field.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}", path=str(path))
    values: dict[str, Any] = {}
    game_params: dict[str, str] = {}
    potential_params: dict[str, str] = {}
    for raw, value in dotenv_values(path).items():
        if value is None:
            raise ConfigError(f"{path}: key {raw!r} has no value", path=str(path))
        key = _key(raw)
        if key.startswith(GAME_PREFIX):
            game_params[key[len(GAME_PREFIX) :]] = value
        elif key.startswith(POTENTIAL_PREFIX):
            potential_params[key[len(POTENTIAL_PREFIX) :]] = value
        else:
            values[key] = value
    if game_params:
        values["game_params"] = game_params
    if potential_params:
        values["potential_params"] = potential_params
    return values


def load_run_config(
    experiment: str,
    defaults: Optional[dict[str, Any]] = None,
    config_path: Optional[Path | str] = None,
    overrides: Optional[dict[str, Any]] = None,
    params: Iterable[str] = (),
    potential_params: Iterable[str] = (),
) -> RunConfig:
    """Command defaults < config file < flags. Game parameters merge key by key."""
    merged: dict[str, Any] = dict(defaults or {})
    if config_path is not None:
        merged.update(read_config_file(config_path))
    flags = {k: v for k, v in (overrides or {}).items() if v is not None}
    merged.update(flags)
    merged["game_params"] = {**merged.get("game_params", {}), **parse_assignments(params)}
    merged["potential_params"] = {
        **merged.get("potential_params", {}),
        **parse_assignments(potential_params, "--potential-param"),
    }
    merged["experiment"] = experiment
    return RunConfig.model_validate(merged)


def run_directory(cfg: RunConfig) -> Path:
    """`<output_root>/<experiment>-<hash>` unless an explicit directory was given."""
    if cfg.output_dir is not None:
        return cfg.output_dir
    digest = hashlib.sha256(cfg.canonical_json().encode()).hexdigest()[:12]
    return get_settings().output_root / f"{cfg.experiment}-{digest}"


def instance_from(cfg: RunConfig, sigma: Optional[float] = None) -> GameInstance:
    return build_instance(
        cfg.game,
        sigma if sigma is not None else cfg.sigma,
        potential=cfg.potential,
        game_params=cfg.game_params,
        potential_params=cfg.potential_params,
    )


def cost_from(cfg: RunConfig) -> MeanFieldCost:
    return build_cost(cfg.game, **cfg.game_params)
