"""Rate fits and trend tests on recorded series."""

from typing import NamedTuple, Optional

import numpy as np
from scipy.stats import linregress

from core.errors import ConfigError, NumericalError
from schemas.series import RateFit, StatSeries

TRANSIENT_FRACTION = 0.2
TAIL_FRACTION = 1.0 / 3.0
TREND_SIGMAS = 3.0
TREND_ATOL = 1e-12


class TrendResult(NamedTuple):
    """Mean least-squares slope with its standard error."""

    slope: float
    stderr: float

    @property
    def threshold(self) -> float:
        """Largest slope not significantly positive."""
        return TREND_SIGMAS * self.stderr + TREND_ATOL

    @property
    def increasing(self) -> bool:
        return self.slope > self.threshold


def default_window(times: np.ndarray, skip: float = TRANSIENT_FRACTION) -> tuple[float, float]:
    t0, t1 = float(times[0]), float(times[-1])
    return t0 + skip * (t1 - t0), t1


def fit_exponential_rate(series: StatSeries, window: Optional[tuple[float, float]] = None) -> RateFit:
    """Least-squares line through (t, log value) on the window; slope is the decay exponent."""
    window = window or default_window(series.t)
    part = series.window(*window)
    if len(part.times) < 2:
        raise ConfigError(f"window {window} holds fewer than two samples of {series.label!r}")
    values = part.v
    if np.any(values <= 0):
        raise NumericalError(f"{series.label!r} has non-positive values in window {window}")
    t, y = part.t, np.log(values)
    if np.ptp(y) == 0:
        return RateFit(slope=0.0, intercept=float(y[0]), r_squared=1.0, window=window)
    fit = linregress(t, y)
    return RateFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(min(1.0, fit.rvalue**2)),
        window=window,
        stderr=float(fit.stderr),
    )


def _tail(times: np.ndarray, fraction: float) -> np.ndarray:
    return times >= times[-1] - fraction * (times[-1] - times[0])


def _slopes(x: np.ndarray, values: np.ndarray) -> TrendResult:
    """Slopes of each row of `values` against x, summarized across rows."""
    values = np.atleast_2d(values)
    if values.shape[0] == 1:
        fit = linregress(x, values[0])
        return TrendResult(float(fit.slope), float(fit.stderr))
    slopes = np.array([linregress(x, row).slope for row in values])
    return TrendResult(float(slopes.mean()), float(slopes.std(ddof=1) / np.sqrt(len(slopes))))


def trend_test(times: np.ndarray, values: np.ndarray, fraction: float = TAIL_FRACTION) -> TrendResult:
    """
    Slope of values against t over the final `fraction` of the horizon.

    With several replicas (rows) the standard error is the spread of the
    per-replica slopes; with one, the regression standard error.
    """
    times = np.asarray(times, dtype=float)
    keep = _tail(times, fraction)
    if keep.sum() < 3:
        raise ConfigError("trend test needs at least three samples in the tail window")
    return _slopes(times[keep], np.atleast_2d(values)[:, keep])


def power_law_exponent(
    times: np.ndarray,
    values: np.ndarray,
    t_min: float = 0.0,
    fraction: float = TAIL_FRACTION,
    floor: float = 1e-300,
) -> TrendResult:
    """Exponent k of values ~ t^k over the tail of [t_min, T], by log-log regression."""
    times = np.asarray(times, dtype=float)
    values = np.atleast_2d(values)
    keep = times >= max(t_min, 1e-300)
    times, values = times[keep], values[:, keep]
    tail = _tail(times, fraction)
    if tail.sum() < 3:
        raise ConfigError("power-law fit needs at least three samples in the tail window")
    return _slopes(np.log(times[tail]), np.log(np.maximum(values[:, tail], floor)))


def loglog_slope(x: np.ndarray, y: np.ndarray) -> TrendResult:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.size < 2:
        raise ConfigError("a log-log slope needs at least two points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise NumericalError("log-log slope needs positive data")
    if x.size == 2:
        slope = float(np.diff(np.log(y))[0] / np.diff(np.log(x))[0])
        return TrendResult(slope, 0.0)
    fit = linregress(np.log(x), np.log(y))
    return TrendResult(float(fit.slope), float(fit.stderr))


def ratio_spread(values: list[float]) -> float:
    """max / min of positive values."""
    arr = np.asarray(values, dtype=float)
    if np.any(arr <= 0):
        raise NumericalError("ratio spread needs positive values")
    return float(arr.max() / arr.min())
