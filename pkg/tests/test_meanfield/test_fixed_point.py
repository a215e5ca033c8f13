"""Tests for invariant measures, temperature sweeps and the free energy."""

import math

import numpy as np
import pytest

from core.errors import BoundaryMassError, ConfigError, FixedPointError, MeasureError
from games import GameInstance, GaussianPotential
from games.builtin import LQCost, QuadCost
from meanfield import (
    analytic_candidate,
    free_energy,
    gibbs_map,
    invariant_fixed_point,
    mfe_residual,
    mfe_sigma_sweep,
)
from meanfield.residual import support_points
from measures import DiscreteMeasure, GridMeasure1D, moment
from schemas.config import GridSpec


def off_centre(grid: GridSpec) -> GridMeasure1D:
    return GridMeasure1D.gaussian(grid.lo, grid.hi, grid.nodes, mean=1.0)


class TestInvariantFixedPoint:
    """Tests for the damped Gibbs iteration."""

    def test_quadratic_closed_form(self, quad_instance, small_grid):
        """Test m^sigma = N(0, sigma / (1 + sigma)) and its log normalizer."""
        var = 0.2 / 1.2

        result = invariant_fixed_point(quad_instance, grid=small_grid, damping=1.0)

        assert result.iterations == 1
        assert moment(result.measure, 2) == pytest.approx(var, abs=1e-8)
        assert result.log_normalizer == pytest.approx(0.5 * math.log(var), abs=1e-8)
        assert result.residual <= 1e-10
        assert result.boundary_ratio < 1e-8

    def test_lq_fixed_point(self, lq_instance, small_grid):
        """Test the centred Gaussian fixed point of the LQ game from an off-centre start."""
        init = GridMeasure1D.gaussian(small_grid.lo, small_grid.hi, small_grid.nodes, mean=1.0)

        result = invariant_fixed_point(lq_instance, grid=small_grid, init=init)

        assert result.measure.mean()[0] == pytest.approx(0.0, abs=1e-8)
        assert moment(result.measure, 2) == pytest.approx(0.25 / 1.25, abs=1e-8)
        assert result.iterations > 1

    def test_measure_independent_cost_at_default_damping(self, quad_instance, small_grid):
        """Test that a cost ignoring m converges in one update without damping=1."""
        result = invariant_fixed_point(quad_instance, grid=small_grid)

        assert result.iterations == 1
        assert moment(result.measure, 2) == pytest.approx(0.2 / 1.2, abs=1e-8)

    def test_lq_centred_start_is_one_update(self, lq_instance, small_grid):
        """Test that G of a centred start is already the LQ fixed point."""
        assert invariant_fixed_point(lq_instance, grid=small_grid).iterations == 1

    def test_not_converged(self, lq_instance, small_grid):
        """Test that exhausting the iteration budget raises."""
        with pytest.raises(FixedPointError) as exc:
            invariant_fixed_point(lq_instance, grid=small_grid, max_iter=1, init=off_centre(small_grid))

        assert exc.value.iterations == 1
        assert exc.value.residual > 1e-10

    def test_boundary_mass(self):
        """Test that a grid too narrow for the density is refused."""
        instance = GameInstance(cost=QuadCost(), potential=GaussianPotential(), sigma=1.0)

        with pytest.raises(BoundaryMassError):
            invariant_fixed_point(instance, grid=GridSpec(lo=-1.0, hi=1.0, nodes=201), damping=1.0)

    def test_one_dimensional_only(self, small_grid):
        """Test that the grid solver refuses d > 1."""
        instance = GameInstance(cost=LQCost(dim=2), potential=GaussianPotential(dim=2), sigma=0.1)

        with pytest.raises(ConfigError):
            invariant_fixed_point(instance, grid=small_grid)

    def test_gibbs_map_normalizes(self, lq_instance, small_grid):
        """Test that G(m) is a probability density on the same grid."""
        m = GridMeasure1D.gaussian(small_grid.lo, small_grid.hi, small_grid.nodes, mean=1.0)

        g, _ = gibbs_map(lq_instance, m)

        assert g.same_grid(m)
        assert g.mass() == pytest.approx(1.0, abs=1e-12)
        # the interaction b * x * mean(m) pushes mass left of the origin
        assert g.mean()[0] < 0


class TestDeskGrid:
    """Tests on the default [-8, 8] x 4001 grid with the default damping."""

    GRID = GridSpec(lo=-8.0, hi=8.0, nodes=4001)
    VAR = 0.25 / 1.25

    def l1_to_gaussian(self, m: GridMeasure1D) -> float:
        pdf = np.exp(-m.nodes**2 / (2.0 * self.VAR)) / math.sqrt(2.0 * math.pi * self.VAR)
        return float(np.sum(np.abs(m.density - pdf)) * m.step)

    def test_quadratic_game(self):
        """Test L1 <= 1e-6 against N(0, 0.2) within 50 updates."""
        instance = GameInstance(cost=QuadCost(), potential=GaussianPotential(), sigma=0.25)

        result = invariant_fixed_point(instance, grid=self.GRID)

        assert result.iterations <= 50
        assert self.l1_to_gaussian(result.measure) <= 1e-6

    @pytest.mark.parametrize("mean", [0.0, 1.0])
    def test_lq_game(self, mean):
        """Test the LQ fixed point from centred and shifted starts."""
        instance = GameInstance(cost=LQCost(a=1.0, b=0.5), potential=GaussianPotential(), sigma=0.25)
        init = GridMeasure1D.gaussian(self.GRID.lo, self.GRID.hi, self.GRID.nodes, mean=mean)

        result = invariant_fixed_point(instance, grid=self.GRID, init=init)

        assert result.iterations <= 50
        assert self.l1_to_gaussian(result.measure) <= 1e-6


class TestResidual:
    """Tests for the support condition."""

    def test_equilibrium_has_zero_residual(self, small_grid):
        """Test delta_0 for the quadratic cost."""
        assert mfe_residual(QuadCost(), DiscreteMeasure.dirac(0.0), small_grid) == 0.0

    def test_off_equilibrium(self, small_grid):
        """Test F(1, delta_1) - min F = 1/2."""
        assert mfe_residual(QuadCost(), DiscreteMeasure.dirac(1.0), small_grid) == pytest.approx(0.5)

    def test_support_threshold(self):
        """Test that negligible grid mass is not part of the support."""
        m = GridMeasure1D.gaussian(-8.0, 8.0, 1601, var=0.01)

        support = support_points(m)[:, 0]

        assert 0.3 < support.max() < 1.0
        assert support.min() == pytest.approx(-support.max())


class TestSigmaSweep:
    """Tests for sweeps toward sigma = 0."""

    def test_quadratic_sweep(self, quad_instance, small_grid):
        """Test distances between consecutive Gaussian fixed points."""
        sigmas = [0.4, 0.2, 0.1]

        sweep = mfe_sigma_sweep(quad_instance, sigmas, grid=small_grid)

        assert not sweep.failures
        assert sweep.w2_consecutive[0] is None
        assert sweep.w2_consecutive[1] == pytest.approx(math.sqrt(0.4 / 1.4) - math.sqrt(0.2 / 1.2), abs=1e-3)
        assert sweep.w2_to_smallest[-1] == pytest.approx(0.0, abs=1e-12)
        assert sweep.w2_to_smallest[0] > sweep.w2_to_smallest[1]
        assert sweep.candidate.source == "sigma-sweep"
        assert sweep.candidate.gap > 0

    def test_failures_are_recorded(self, lq_instance, small_grid):
        """Test that failing temperatures leave empty slots and no candidate."""
        sweep = mfe_sigma_sweep(lq_instance, [0.2, 0.1], grid=small_grid, max_iter=1, init=off_centre(small_grid))

        assert set(sweep.failures) == {0, 1}
        assert sweep.results == [None, None]
        assert sweep.candidate is None

    def test_analytic_candidate(self, lq_instance, small_grid):
        """Test the closed-form MFE and its absence."""
        candidate = analytic_candidate(lq_instance, small_grid)
        none = analytic_candidate(lq_instance.model_copy(update={"cost": LQCost(a=1.0, b=-1.0)}), small_grid)

        assert candidate.source == "analytic"
        assert candidate.gap == pytest.approx(0.0, abs=1e-12)
        assert none is None


class TestFreeEnergy:
    """Tests for Phi(mu, m)."""

    def test_reference_measure_has_no_entropy(self, standard_normal_grid):
        """Test Phi(nu, m) = int F dnu when mu is the reference itself."""
        value = free_energy(QuadCost(), GaussianPotential(), standard_normal_grid, DiscreteMeasure.dirac(0.0), 0.3)

        assert value == pytest.approx(0.5, abs=1e-6)

    def test_shifted_gaussian(self):
        """Test Phi(N(1,1), m) = 1 + sigma / 2."""
        mu = GridMeasure1D.gaussian(-10.0, 11.0, 2101, mean=1.0)

        value = free_energy(QuadCost(), GaussianPotential(), mu, DiscreteMeasure.dirac(0.0), 0.4)

        assert value == pytest.approx(1.0 + 0.2, abs=1e-6)

    def test_gibbs_measure_minimizes(self, quad_instance, small_grid):
        """Test that G(m) has the least free energy among competitors."""
        m = GridMeasure1D.gaussian(small_grid.lo, small_grid.hi, small_grid.nodes)
        g, _ = gibbs_map(quad_instance, m)
        sigma = quad_instance.sigma

        best = free_energy(QuadCost(), GaussianPotential(), g, m, sigma)

        for mean in (0.3, -0.5):
            other = GridMeasure1D.gaussian(small_grid.lo, small_grid.hi, small_grid.nodes, mean=mean, var=0.2)
            assert best < free_energy(QuadCost(), GaussianPotential(), other, m, sigma)

    def test_zero_temperature_and_errors(self):
        """Test the pure energy and the invalid cases."""
        mu = DiscreteMeasure(points=[1.0, -1.0])

        assert free_energy(QuadCost(), GaussianPotential(), mu, mu, 0.0) == pytest.approx(0.5)
        with pytest.raises(MeasureError):
            free_energy(QuadCost(), GaussianPotential(), mu, mu, 0.1)
        with pytest.raises(MeasureError):
            free_energy(QuadCost(), GaussianPotential(), mu, mu, -1.0)
