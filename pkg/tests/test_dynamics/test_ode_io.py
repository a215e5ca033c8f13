"""Tests for the gradient flow, Cesaro averages and CSV output."""

import numpy as np
import pytest

from core.errors import BlowUpError, ConfigError
from dynamics import (
    Trajectory,
    cesaro_average,
    ode_gradient_flow,
    read_series_csv,
    write_series_csv,
    write_snapshot_csv,
    write_trajectory_csv,
)
from games import symmetrize
from games.builtin import QuadCost, sincos2p
from schemas.series import ParticleState, StatSeries


def _linear_trajectory() -> Trajectory:
    times = np.array([0.0, 1.0, 2.0])
    return Trajectory(times=times, states=times[:, None, None] * np.ones((3, 2, 1)))


class TestGradientFlow:
    """Tests for explicit Euler on finite-player games."""

    def test_quadratic_decay(self):
        """Test u_k = (1 - dt)^k u_0 for independent quadratic players."""
        game = symmetrize(QuadCost(k=1.0), 3)
        x0 = np.array([[1.0], [-2.0], [0.5]])

        traj = ode_gradient_flow(game, x0, dt=0.1, t_end=1.0, record_every=5)

        np.testing.assert_allclose(traj.times, [0.0, 0.5, 1.0])
        np.testing.assert_allclose(traj.final, 0.9**10 * x0)

    def test_two_player_sincos_settles(self):
        """Test that the two-player flow reaches a stationary profile."""
        game = sincos2p()

        traj = ode_gradient_flow(game, np.array([[1.0], [-1.0]]), dt=0.01, t_end=20.0, record_every=100)

        np.testing.assert_allclose(game.stacked_grad(traj.final), 0.0, atol=1e-8)

    def test_step_size_limit(self):
        """Test dt * L < 1."""
        with pytest.raises(ConfigError):
            ode_gradient_flow(symmetrize(QuadCost(k=1.0), 2), np.zeros((2, 1)), dt=1.0, t_end=2.0)

    def test_blow_up(self):
        """Test divergence detection without a declared Lipschitz bound."""
        game = symmetrize(QuadCost(k=1.0), 2).model_copy(update={"lipschitz_bound": None})

        with pytest.raises(BlowUpError):
            ode_gradient_flow(game, np.ones((2, 1)), dt=3.0, t_end=300.0)


class TestCesaroAverage:
    """Tests for time averages of trajectories."""

    def test_linear_path(self):
        """Test that the average of t over [s, t] is the midpoint."""
        traj = _linear_trajectory()

        np.testing.assert_allclose(cesaro_average(traj, 2.0), 1.0)
        np.testing.assert_allclose(cesaro_average(traj, 1.5, t_start=0.5), 1.0)

    def test_degenerate_window(self):
        """Test that a zero-length window returns the interpolated state."""
        np.testing.assert_allclose(cesaro_average(_linear_trajectory(), 0.5, t_start=0.5), 0.5)

    def test_window_outside_span(self):
        """Test that windows must lie inside the recorded times."""
        with pytest.raises(ConfigError):
            cesaro_average(_linear_trajectory(), 3.0)


class TestCsv:
    """Tests for CSV output."""

    def test_series_file(self, tmp_path):
        """Test the column layout and reading it back."""
        series = [
            StatSeries.from_arrays("a", [0.0, 0.5], [1.0, 1.0 / 3.0]),
            StatSeries.from_arrays("b", [0.0, 0.5], [2.0, -1.0]),
        ]

        path = write_series_csv(tmp_path / "series.csv", series)
        back = read_series_csv(path)

        assert path.read_text().splitlines()[0] == "time,a,b"
        assert back == series

    def test_series_must_share_times(self, tmp_path):
        """Test that misaligned series are refused."""
        series = [
            StatSeries.from_arrays("a", [0.0, 1.0], [1.0, 2.0]),
            StatSeries.from_arrays("b", [0.0, 2.0], [1.0, 2.0]),
        ]

        with pytest.raises(ConfigError):
            write_series_csv(tmp_path / "s.csv", series)

    def test_snapshot_and_trajectory_files(self, tmp_path):
        """Test the long formats."""
        state = ParticleState(positions=[[0.0, 1.0], [2.0, 3.0]], time=0.5)

        snap = write_snapshot_csv(tmp_path / "snap" / "step.csv", state).read_text().splitlines()
        traj = write_trajectory_csv(tmp_path / "traj.csv", _linear_trajectory()).read_text().splitlines()

        assert snap[0] == "particle,time,x0,x1"
        assert snap[2] == "1,0.5,2,3"
        assert traj[0] == "time,player,x0"
        assert len(traj) == 1 + 3 * 2
