"""Experiment reports and their statistical post-processing."""

from analysis.chaos import concentration_bound, concentration_report, poc_report, radius_for_target
from analysis.contraction import contraction_report, weak_dm_report
from analysis.equilibria import (
    epsilon_nash_report,
    invariant_report,
    nash_convergence_report,
    nash_profile,
    sigma_rate_report,
)
from analysis.fitting import (
    TrendResult,
    fit_exponential_rate,
    loglog_slope,
    power_law_exponent,
    ratio_spread,
    trend_test,
)
from analysis.probe import probe_report
from analysis.report_io import parse_summary, read_report, render_text, summary_text, write_report

__all__ = [
    "TrendResult",
    "concentration_bound",
    "concentration_report",
    "contraction_report",
    "epsilon_nash_report",
    "fit_exponential_rate",
    "invariant_report",
    "loglog_slope",
    "nash_convergence_report",
    "nash_profile",
    "parse_summary",
    "poc_report",
    "power_law_exponent",
    "probe_report",
    "radius_for_target",
    "ratio_spread",
    "read_report",
    "render_text",
    "sigma_rate_report",
    "summary_text",
    "trend_test",
    "weak_dm_report",
    "write_report",
]
