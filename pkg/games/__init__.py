"""Games: mean-field costs, potentials, finite-player games and probes."""

from games.base import CostConstants, Dissipativity, FunctionCost, KernelCost, MeanFieldCost, StatisticCost
from games.catalog import build_cost, build_game, build_instance, build_potential, builtin_games
from games.finite import FinitePlayerGame, symmetrize
from games.instance import GameInstance
from games.potentials import GaussianPotential, LogCoshPotential, Potential, ZeroPotential
from games.probes import (
    check_dissipativity,
    check_game_gradients,
    check_gradient,
    check_potential,
    gamma_dm,
    gamma_ll,
    probe_monotonicity,
)

__all__ = [
    "CostConstants",
    "Dissipativity",
    "FinitePlayerGame",
    "FunctionCost",
    "GameInstance",
    "GaussianPotential",
    "KernelCost",
    "LogCoshPotential",
    "MeanFieldCost",
    "Potential",
    "StatisticCost",
    "ZeroPotential",
    "build_cost",
    "build_game",
    "build_instance",
    "build_potential",
    "builtin_games",
    "check_dissipativity",
    "check_game_gradients",
    "check_gradient",
    "check_potential",
    "gamma_dm",
    "gamma_ll",
    "probe_monotonicity",
    "symmetrize",
]
