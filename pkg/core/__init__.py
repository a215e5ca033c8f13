"""Core module exports."""

from core.config import Settings, get_settings
from core.errors import (
    AbsoluteContinuityError,
    BlowUpError,
    BoundaryMassError,
    ConfigError,
    FixedPointError,
    HypothesisError,
    MeanFieldError,
    MeasureError,
    NumericalError,
    UnknownGameError,
    UnsupportedCaseError,
)
from core.logging import get_logger, setup_logging

__all__ = [
    "Settings",
    "get_settings",
    "get_logger",
    "setup_logging",
    "AbsoluteContinuityError",
    "BlowUpError",
    "BoundaryMassError",
    "ConfigError",
    "FixedPointError",
    "HypothesisError",
    "MeanFieldError",
    "MeasureError",
    "NumericalError",
    "UnknownGameError",
    "UnsupportedCaseError",
]
