"""Human-readable reports and line-oriented key=value summaries."""

import json
from pathlib import Path
from typing import Any

from core.errors import ConfigError
from core.logging import get_logger
from schemas.reports import ExperimentReport

logger = get_logger(__name__)

SUMMARY_FILE = "summary.txt"
REPORT_FILE = "report.txt"
SUMMARY_KEYS = ("name", "game", "verdict", "degenerate", "parameters", "bounds", "checks", "notes", "measurements")


def _encode(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def summary_text(report: ExperimentReport) -> str:
    """One `key=<json>` line per report field, in a fixed order."""
    data = report.model_dump(mode="json")
    return "".join(f"{key}={_encode(data[key])}\n" for key in SUMMARY_KEYS)


def parse_summary(text: str) -> ExperimentReport:
    fields: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        key, sep, raw = line.partition("=")
        if not sep:
            raise ConfigError(f"summary line {lineno} has no '='")
        try:
            fields[key.strip()] = json.loads(raw)
        except json.JSONDecodeError as e:
            raise ConfigError(f"summary line {lineno}: {e}") from e
    return ExperimentReport.model_validate(fields)


def _number(value: Any) -> str:
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def render_text(report: ExperimentReport) -> str:
    lines = [
        f"experiment: {report.name}",
        f"game:       {report.game}",
        f"verdict:    {report.verdict.upper()}" + (" (degenerate)" if report.degenerate else ""),
        "",
        "checks:",
    ]
    for check in report.checks:
        mark = "ok  " if check.passed else "FAIL"
        lines.append(
            f"  [{mark}] {check.name}: {_number(check.value)} {check.comparator} {_number(check.threshold)}"
        )
    scalars = {k: v for k, v in report.measurements.items() if isinstance(v, (int, float, str)) or v is None}
    if scalars:
        lines += ["", "measurements:"]
        lines += [f"  {k} = {_number(v)}" for k, v in sorted(scalars.items())]
    if report.bounds:
        lines += ["", "bounds:"]
        lines += [f"  {k} = {_number(v)}" for k, v in sorted(report.bounds.items())]
    if report.notes:
        lines += ["", "notes:"]
        lines += [f"  - {note}" for note in report.notes]
    return "\n".join(lines) + "\n"


def write_report(directory: Path | str, report: ExperimentReport) -> tuple[Path, Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    text_path = directory / REPORT_FILE
    summary_path = directory / SUMMARY_FILE
    text_path.write_text(render_text(report))
    summary_path.write_text(summary_text(report))
    logger.info("report_written", experiment=report.name, verdict=report.verdict, path=str(directory))
    return text_path, summary_path


def read_report(directory: Path | str) -> ExperimentReport:
    return parse_summary((Path(directory) / SUMMARY_FILE).read_text())
