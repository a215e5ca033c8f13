"""Tests for the error hierarchy and logging setup."""

import json

import pytest
import structlog

from core.errors import (
    BlowUpError,
    ConfigError,
    FixedPointError,
    HypothesisError,
    MeasureError,
    NumericalError,
    UnknownGameError,
)
from core.logging import get_logger, setup_logging


class TestErrors:
    """Tests for exception context and classification."""

    def test_value_errors(self):
        """Test that input errors are also ValueErrors."""
        assert issubclass(ConfigError, ValueError)
        assert issubclass(MeasureError, ValueError)
        assert not issubclass(HypothesisError, NumericalError)

    def test_unknown_game_message(self):
        """Test suggestions in the message and on the instance."""
        err = UnknownGameError("lqq", ["lq"])

        assert str(err) == "Unknown game: lqq. Did you mean: lq?"
        assert err.suggestions == ["lq"]
        assert err.context == {"name": "lqq"}
        assert str(UnknownGameError("zzz", [])) == "Unknown game: zzz."

    def test_numerical_context(self):
        """Test structured attributes on numerical failures."""
        blow_up = BlowUpError(step=12, time=0.12, max_abs=3e8, replica=1)
        fixed_point = FixedPointError(iterations=500, residual=1e-6, sigma=0.1)

        assert isinstance(blow_up, NumericalError)
        assert blow_up.context["replica"] == 1
        assert "replica 1" in str(blow_up)
        assert fixed_point.context == {"iterations": 500, "residual": 1e-6, "sigma": 0.1}


class TestLogging:
    """Tests for structlog configuration."""

    @pytest.fixture(autouse=True)
    def reset_structlog(self):
        yield
        structlog.reset_defaults()

    def test_json_lines_on_stderr(self, capsys):
        """Test that JSON events go to stderr and stdout stays clean."""
        setup_logging(level="info", fmt="json")

        get_logger("tests").info("fixed_point_converged", iterations=3)

        captured = capsys.readouterr()
        event = json.loads(captured.err.strip().splitlines()[-1])
        assert captured.out == ""
        assert event["event"] == "fixed_point_converged"
        assert event["iterations"] == 3
        assert event["level"] == "info"

    def test_level_filtering(self, capsys):
        """Test that events below the level are dropped."""
        setup_logging(level="WARNING", fmt="json")

        get_logger("tests").info("hidden")

        assert capsys.readouterr().err == ""
