"""Measure representations, transport distances and sampling."""

from measures.base import BaseMeasure
from measures.coupling import Coupling
from measures.discrete import DiscreteMeasure, EmpiricalMeasure
from measures.entropy import relative_entropy
from measures.grid import GridMeasure1D, log_trapezoid, trapezoid_weights
from measures.io import read_measure_csv, write_measure_csv
from measures.rates import fournier_guillin_delta
from measures.statistics import moment, sample
from measures.wasserstein import wasserstein, wasserstein_1d, wasserstein_exact

__all__ = [
    "BaseMeasure",
    "Coupling",
    "DiscreteMeasure",
    "EmpiricalMeasure",
    "GridMeasure1D",
    "fournier_guillin_delta",
    "log_trapezoid",
    "moment",
    "read_measure_csv",
    "relative_entropy",
    "sample",
    "trapezoid_weights",
    "wasserstein",
    "wasserstein_1d",
    "wasserstein_exact",
    "write_measure_csv",
]
