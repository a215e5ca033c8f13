"""Registry of built-in games and potentials."""

from typing import Any, Callable, Literal, Union

from pydantic import BaseModel, ConfigDict, ValidationError
from rapidfuzz import fuzz

from core.errors import ConfigError, UnknownGameError
from core.logging import get_logger
from games.base import MeanFieldCost
from games.builtin import (
    AntiConvolutionCost,
    ConvolutionCost,
    LQCost,
    QuadCost,
    RankOneCost,
    SincosCost,
    WeakDMCost,
    sincos2p,
)
from games.finite import FinitePlayerGame
from games.instance import GameInstance
from games.potentials import GaussianPotential, LogCoshPotential, Potential, ZeroPotential

logger = get_logger(__name__)

SUGGESTION_THRESHOLD = 60.0

Game = Union[MeanFieldCost, FinitePlayerGame]


class GameEntry(BaseModel):
    """A named game constructor with its documented parameters."""

    model_config = ConfigDict(frozen=True)

    name: str
    kind: Literal["mean_field", "finite_player"]
    description: str
    factory: Callable[..., Any]
    parameters: dict[str, Any] = {}


_GAMES: dict[str, GameEntry] = {
    entry.name: entry
    for entry in [
        GameEntry(
            name="quad",
            kind="mean_field",
            description="k|x|^2/2, no interaction",
            factory=QuadCost,
            parameters={"k": 1.0, "dim": 1},
        ),
        GameEntry(
            name="lq",
            kind="mean_field",
            description="a|x|^2/2 + b x.mean(m)",
            factory=LQCost,
            parameters={"a": 1.0, "b": 0.5, "dim": 1},
        ),
        GameEntry(
            name="convolution",
            kind="mean_field",
            description="int phi(x-y) m(dy) + g(x), phi odd bounded",
            factory=ConvolutionCost,
            parameters={"variant": "sin"},
        ),
        GameEntry(
            name="rank_one",
            kind="mean_field",
            description="tanh(x) int tanh dm + x^2/2",
            factory=RankOneCost,
        ),
        GameEntry(
            name="anti_convolution",
            kind="mean_field",
            description="C|x|^2 - (phi*m)(x), phi = beta exp(-|z|^2); DM but not LL monotone",
            factory=AntiConvolutionCost,
            parameters={"C": 1.0, "beta": 1.0, "dim": 1},
        ),
        GameEntry(
            name="weak_dm",
            kind="mean_field",
            description="a|x|^2/2 + b x.mean(m)/(1+|m|_1), weakly displacement monotone",
            factory=WeakDMCost,
            parameters={"a": 0.2, "b": 0.1, "dim": 1},
        ),
        GameEntry(
            name="sincos",
            kind="mean_field",
            description="x^2 + sin(x) int cos dm",
            factory=SincosCost,
        ),
        GameEntry(
            name="sincos2p",
            kind="finite_player",
            description="two players, F_1 = x^2 + sin(x)cos(y), F_2 symmetric",
            factory=sincos2p,
        ),
    ]
}

_POTENTIALS: dict[str, type[Potential]] = {
    "gaussian": GaussianPotential,
    "log_cosh": LogCoshPotential,
    "zero": ZeroPotential,
}


def builtin_games() -> dict[str, GameEntry]:
    return dict(_GAMES)


def suggest(name: str, choices: list[str]) -> list[str]:
    """Close matches for a mistyped name, best first."""
    scored = [(fuzz.ratio(name, choice), choice) for choice in choices]
    return [choice for score, choice in sorted(scored, reverse=True) if score >= SUGGESTION_THRESHOLD][:3]


def _construct(label: str, factory: Callable[..., Any], params: dict[str, Any]) -> Any:
    try:
        return factory(**params)
    except (ValidationError, TypeError) as e:
        raise ConfigError(f"invalid parameters for {label}: {e}", game=label) from e


def build_game(name: str, **params: Any) -> Game:
    """Instantiate a catalog game; parameters may be strings and are coerced."""
    entry = _GAMES.get(name)
    if entry is None:
        raise UnknownGameError(name, suggest(name, list(_GAMES)))
    game = _construct(name, entry.factory, params)
    logger.debug("game_built", game=name, params=params)
    return game


def build_cost(name: str, **params: Any) -> MeanFieldCost:
    game = build_game(name, **params)
    if not isinstance(game, MeanFieldCost):
        raise ConfigError(f"{name} is a finite-player game, a mean-field cost is required", game=name)
    return game


def build_potential(name: str, **params: Any) -> Potential:
    cls = _POTENTIALS.get(name)
    if cls is None:
        raise ConfigError(
            f"Unknown potential: {name}. Choose one of: {', '.join(sorted(_POTENTIALS))}",
            potential=name,
        )
    return _construct(name, cls, params)


def build_instance(
    game: str,
    sigma: float,
    potential: str = "gaussian",
    game_params: dict[str, Any] | None = None,
    potential_params: dict[str, Any] | None = None,
) -> GameInstance:
    cost = build_cost(game, **(game_params or {}))
    pot_params = dict(potential_params or {})
    pot_params.setdefault("dim", cost.dim)
    try:
        return GameInstance(cost=cost, potential=build_potential(potential, **pot_params), sigma=sigma)
    except ValidationError as e:
        raise ConfigError(f"invalid game instance: {e}", game=game) from e
