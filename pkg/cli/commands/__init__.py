"""Subcommand registry."""

from pathlib import Path
from typing import Any, Callable, NamedTuple, Optional

from cli.commands.bench import cmd_bench
from cli.commands.catalog import cmd_catalog, cmd_probe
from cli.commands.coupling import (
    CONCENTRATION_DEFAULTS,
    POC_DEFAULTS,
    WEAK_DM_DEFAULTS,
    cmd_concentration,
    cmd_contraction,
    cmd_poc,
    cmd_weak_dm,
)
from cli.commands.equilibria import (
    EPSILON_NASH_DEFAULTS,
    NASH_DEFAULTS,
    cmd_epsilon_nash,
    cmd_invariant,
    cmd_nash,
    cmd_sigma_sweep,
)
from cli.commands.simulate import cmd_simulate
from schemas.config import RunConfig
from schemas.reports import ExperimentReport

Handler = Callable[[RunConfig, Path], Optional[ExperimentReport]]


class Command(NamedTuple):
    name: str
    help: str
    handler: Handler
    defaults: dict[str, Any] = {}


COMMANDS: dict[str, Command] = {
    c.name: c
    for c in [
        Command("catalog", "list built-in games", cmd_catalog),
        Command("simulate", "run the interacting particle system and write CSV series", cmd_simulate),
        Command("invariant", "solve the invariant measure of the McKean-Vlasov dynamics", cmd_invariant),
        Command("sigma-sweep", "W2 distance to the MFE as the temperature vanishes", cmd_sigma_sweep),
        Command("contraction", "exponential contraction of a synchronous coupling", cmd_contraction),
        Command("weak-dm", "1/t decay under weak displacement monotonicity", cmd_weak_dm, WEAK_DM_DEFAULTS),
        Command("poc", "uniform-in-time propagation of chaos", cmd_poc, POC_DEFAULTS),
        Command("nash", "Nash profiles converging to the MFE", cmd_nash, NASH_DEFAULTS),
        Command("epsilon-nash", "epsilon-Nash gap of players sampled from the MFE", cmd_epsilon_nash, EPSILON_NASH_DEFAULTS),
        Command("probe", "random search for monotonicity violations", cmd_probe),
        Command(
            "concentration",
            "tail of the empirical measure around a Nash profile",
            cmd_concentration,
            CONCENTRATION_DEFAULTS,
        ),
        Command("bench", "per-step cost of the fast and pairwise drift paths", cmd_bench),
    ]
}

__all__ = ["COMMANDS", "Command", "Handler"]
