"""Tests for settings and configuration models."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from core.config import Settings, get_settings
from schemas.config import GridSpec, RunConfig, SdeConfig


class TestSettings:
    """Tests for environment-driven settings."""

    def test_environment_overrides(self, monkeypatch):
        """Test MFL_ variables and lower-case log levels."""
        monkeypatch.setenv("MFL_DEFAULT_DT", "0.005")
        monkeypatch.setenv("MFL_LOG_LEVEL", "debug")
        get_settings.cache_clear()

        settings = get_settings()

        assert settings.default_dt == 0.005
        assert settings.log_level == "DEBUG"
        assert settings.workers == 2

    def test_rejects_empty_grid(self):
        """Test that the default grid must be non-empty."""
        with pytest.raises(ValidationError):
            Settings(grid_lo=1.0, grid_hi=-1.0)


class TestSdeConfig:
    """Tests for Euler-Maruyama horizons."""

    def test_record_steps_include_last(self):
        """Test that the final step is always recorded."""
        cfg = SdeConfig(dt=0.1, t_end=1.0, record_every=3)

        assert cfg.n_steps == 10
        np.testing.assert_array_equal(cfg.record_steps, [0, 3, 6, 9, 10])
        np.testing.assert_allclose(cfg.record_times[-1], 1.0)

    def test_rejects_non_integer_horizon(self):
        """Test that t_end must be a multiple of dt."""
        with pytest.raises(ValidationError):
            SdeConfig(dt=0.3, t_end=1.0)

    def test_rejects_step_larger_than_horizon(self):
        """Test dt <= t_end."""
        with pytest.raises(ValidationError):
            SdeConfig(dt=2.0, t_end=1.0)

    def test_rounding_tolerance(self):
        """Test that floating ratios such as 1/0.01 are accepted."""
        assert SdeConfig(dt=0.01, t_end=0.3).n_steps == 30


class TestGridSpec:
    """Tests for 1-D grid settings."""

    def test_points_and_step(self):
        """Test the node layout."""
        grid = GridSpec(lo=-1.0, hi=1.0, nodes=5)

        np.testing.assert_allclose(grid.points, [-1.0, -0.5, 0.0, 0.5, 1.0])
        assert grid.step == pytest.approx(0.5)

    def test_from_settings(self):
        """Test the default grid."""
        grid = GridSpec.from_settings()

        assert (grid.lo, grid.hi, grid.nodes) == (-8.0, 8.0, 4001)

    def test_rejects_empty(self):
        """Test lo < hi."""
        with pytest.raises(ValidationError):
            GridSpec(lo=0.0, hi=0.0, nodes=11)


class TestRunConfig:
    """Tests for merged run configurations."""

    def test_defaults_follow_settings(self):
        """Test that unset numerics come from settings."""
        cfg = RunConfig(experiment="simulate")

        assert cfg.dt == 1e-3
        assert cfg.grid_nodes == 4001
        assert cfg.max_iter == 500

    def test_comma_separated_lists(self):
        """Test that list fields accept comma-separated strings."""
        cfg = RunConfig(experiment="poc", n_list="10, 20,40", sigmas="0.4,0.2", r_list="0.5,1")

        assert cfg.n_list == [10, 20, 40]
        assert cfg.sigmas == [0.4, 0.2]
        assert cfg.r_list == [0.5, 1.0]

    @pytest.mark.parametrize(
        "fields",
        [
            {"sigmas": "0.1,0.2"},
            {"sigmas": "0.2,-0.1"},
            {"n_list": "20,10"},
            {"dt": 0.0},
            {"p": 2.0},
            {"slack": 1.0},
            {"proxy_factor": 4},
            {"unexpected": 1},
        ],
    )
    def test_rejects_invalid_fields(self, fields):
        """Test field validation."""
        with pytest.raises(ValidationError):
            RunConfig(experiment="simulate", **fields)

    def test_unknown_game_suggests(self):
        """Test that a typo names the closest game."""
        with pytest.raises(ValidationError, match="did you mean: lq"):
            RunConfig(experiment="simulate", game="lqq")

    def test_sde_and_grid(self):
        """Test derived numeric configs and their overrides."""
        cfg = RunConfig(experiment="simulate", dt=0.01, t_end=2.0, replicas=3, grid_nodes=101)

        assert cfg.sde().n_steps == 200
        assert cfg.sde(t_end=1.0, replicas=1).replicas == 1
        assert cfg.grid().nodes == 101

    def test_canonical_json_ignores_output_location(self, tmp_path):
        """Test that where results go does not change their identity."""
        a = RunConfig(experiment="simulate", seed=3)
        b = RunConfig(experiment="simulate", seed=3, output_dir=tmp_path, workers=7)
        c = RunConfig(experiment="simulate", seed=4)

        assert a.canonical_json() == b.canonical_json()
        assert a.canonical_json() != c.canonical_json()
        assert "output_dir" not in json.loads(a.canonical_json())
