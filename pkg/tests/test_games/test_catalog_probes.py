"""Tests for the game catalog and the monotonicity probes."""

import numpy as np
import pytest

from core.errors import ConfigError, UnknownGameError
from games import (
    build_cost,
    build_game,
    build_instance,
    builtin_games,
    check_dissipativity,
    gamma_dm,
    gamma_ll,
    probe_monotonicity,
)
from games.builtin import AntiConvolutionCost, LQCost, RankOneCost, SincosCost
from games.catalog import suggest
from games.finite import FinitePlayerGame
from measures import Coupling, DiscreteMeasure, EmpiricalMeasure


class TestCatalog:
    """Tests for game lookup and construction."""

    def test_lists_every_builtin(self):
        """Test the catalog contents."""
        names = set(builtin_games())

        assert {"quad", "lq", "convolution", "rank_one", "anti_convolution", "weak_dm", "sincos", "sincos2p"} <= names

    def test_string_parameters_are_coerced(self):
        """Test that key=value strings become floats."""
        cost = build_game("lq", a="2.0", b="-0.25")

        assert isinstance(cost, LQCost)
        assert cost.a == 2.0
        assert cost.b == -0.25

    def test_unknown_game_suggests(self):
        """Test fuzzy suggestions for typos."""
        with pytest.raises(UnknownGameError) as exc:
            build_game("rank_onee")

        assert "rank_one" in exc.value.suggestions
        assert "Did you mean" in str(exc.value)

    def test_unknown_game_is_a_config_error(self):
        """Test the error hierarchy used by the CLI."""
        with pytest.raises(ConfigError):
            build_game("nonsense_game_name")

    def test_suggest_ignores_distant_names(self):
        """Test that unrelated names produce no suggestion."""
        assert suggest("zzzzzz", ["lq", "quad"]) == []

    @pytest.mark.parametrize("params", [{"a": -1.0}, {"unknown": 1.0}, {"variant": "cubic"}])
    def test_invalid_parameters(self, params):
        """Test that bad parameters raise ConfigError."""
        name = "convolution" if "variant" in params else "lq"

        with pytest.raises(ConfigError):
            build_game(name, **params)

    def test_finite_player_game(self):
        """Test that sincos2p builds a two-player game but not a cost."""
        assert isinstance(build_game("sincos2p"), FinitePlayerGame)
        with pytest.raises(ConfigError):
            build_cost("sincos2p")

    def test_build_instance(self):
        """Test that the potential inherits the cost's dimension."""
        instance = build_instance("lq", 0.3, game_params={"dim": 2}, potential_params={"scale": 2.0})

        assert instance.dim == 2
        assert instance.potential.dim == 2
        assert instance.contraction_rate == pytest.approx(1.0 + 0.3 / 4.0)

    def test_build_instance_errors(self):
        """Test unknown potentials and mismatched dimensions."""
        with pytest.raises(ConfigError):
            build_instance("lq", 0.3, potential="harmonic")
        with pytest.raises(ConfigError):
            build_instance("lq", 0.3, game_params={"dim": 2}, potential_params={"dim": 1})


class TestBilinearForms:
    """Tests for Gamma_LL and Gamma_DM."""

    def test_lasry_lions_of_rank_one(self):
        """Test Gamma_LL = (int tanh d(m - m'))^2."""
        m = DiscreteMeasure(points=[0.5, 1.5])
        m2 = DiscreteMeasure.dirac(-1.0)
        expected = (np.tanh([0.5, 1.5]).mean() - np.tanh(-1.0)) ** 2

        assert gamma_ll(RankOneCost(), m, m2) == pytest.approx(expected)

    def test_lq_displacement_form(self):
        """Test Gamma_DM = a E|dx|^2 + b |E dx|^2 on a permutation coupling."""
        m = EmpiricalMeasure(points=[0.0, 1.0, 2.0])
        m2 = EmpiricalMeasure(points=[3.0, 1.0, -1.0])
        plan = Coupling.from_permutation(m, m2, [0, 1, 2])
        dx = m.points[:, 0] - m2.points[:, 0]

        value = gamma_dm(LQCost(a=1.0, b=0.5), plan)

        assert value == pytest.approx(np.mean(dx**2) + 0.5 * np.mean(dx) ** 2)


class TestProbes:
    """Tests for the randomized probes."""

    def test_anti_convolution_is_dm_not_ll(self):
        """Test that the Gaussian anti-convolution violates only Lasry-Lions."""
        cost = AntiConvolutionCost()

        report = probe_monotonicity(cost, trials=300, seed=0)

        assert report.ll_violations > 0
        assert report.ll_witnesses
        assert report.dm_violations == 0
        assert report.min_dm_ratio >= cost.constants.dm_constant - 1e-9
        assert not report.declared_dm_refuted

    def test_probe_is_deterministic(self):
        """Test that a seed fixes the probe."""
        a = probe_monotonicity(SincosCost(), trials=50, seed=5)
        b = probe_monotonicity(SincosCost(), trials=50, seed=5)

        assert a == b

    def test_refutes_a_wrong_declaration(self):
        """Test that an overstated constant is caught."""
        cost = LQCost(a=1.0, b=-0.8)

        report = probe_monotonicity(cost, trials=200, seed=2)

        assert report.min_dm_ratio < cost.a
        assert report.min_dm_ratio >= cost.constants.dm_constant - 1e-9

    @pytest.mark.parametrize("cost", [LQCost(), SincosCost(), RankOneCost(), AntiConvolutionCost()], ids=lambda c: c.name)
    def test_declared_dissipativity_holds(self, cost):
        """Test the declared dissipativity constants on random samples."""
        report = check_dissipativity(cost, samples=2000, seed=0)

        assert report.passed, report.worst_margin
