"""`catalog` and `probe`: what games exist and what they satisfy."""

from pathlib import Path

from analysis.probe import probe_report
from games.catalog import build_game, builtin_games
from schemas.config import RunConfig
from schemas.reports import ExperimentReport


def catalog_table() -> str:
    entries = builtin_games().values()
    width = max(len(e.name) for e in entries)
    lines = []
    for entry in entries:
        params = ", ".join(f"{k}={v}" for k, v in entry.parameters.items()) or "-"
        lines.append(f"{entry.name:<{width}}  {entry.kind:<13}  {entry.description}  [{params}]")
    return "\n".join(lines) + "\n"


def cmd_catalog(cfg: RunConfig, out: Path) -> None:
    print(catalog_table(), end="")


def cmd_probe(cfg: RunConfig, out: Path) -> ExperimentReport:
    game = build_game(cfg.game, **cfg.game_params)
    return probe_report(game, trials=cfg.trials, seed=cfg.seed, dissipativity_samples=cfg.samples)
