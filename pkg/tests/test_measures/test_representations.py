"""Tests for measure representations, couplings, sampling and CSV export."""

import numpy as np
import pytest

from core.errors import AbsoluteContinuityError, MeasureError
from measures import (
    Coupling,
    DiscreteMeasure,
    EmpiricalMeasure,
    GridMeasure1D,
    moment,
    read_measure_csv,
    relative_entropy,
    sample,
    wasserstein_1d,
    write_measure_csv,
)
from measures.base import particle_sum


class TestDiscreteMeasure:
    """Tests for weighted atoms."""

    def test_default_masses_are_uniform(self):
        """Test that omitted masses give the empirical measure."""
        m = DiscreteMeasure(points=[0.0, 1.0, 2.0, 3.0])

        assert m.size == 4
        assert m.dim == 1
        np.testing.assert_allclose(m.masses, 0.25)
        assert m.mean()[0] == pytest.approx(1.5)

    def test_rejects_bad_masses(self):
        """Test validation of masses."""
        with pytest.raises(ValueError):
            DiscreteMeasure(points=[0.0, 1.0], masses=[0.7, 0.7])
        with pytest.raises(ValueError):
            DiscreteMeasure(points=[0.0, 1.0], masses=[1.5, -0.5])
        with pytest.raises(ValueError):
            DiscreteMeasure(points=[0.0, 1.0], masses=[1.0])

    def test_rejects_empty_and_non_finite(self):
        """Test that atoms must exist and be finite."""
        with pytest.raises(ValueError):
            DiscreteMeasure(points=np.empty((0, 1)))
        with pytest.raises(ValueError):
            DiscreteMeasure(points=[0.0, np.nan])

    def test_points_are_read_only(self):
        """Test that measures are immutable."""
        m = DiscreteMeasure(points=[[0.0, 1.0], [2.0, 3.0]])

        with pytest.raises(ValueError):
            m.points[0, 0] = 5.0

    def test_dirac(self):
        """Test a single-atom measure in R^2."""
        m = DiscreteMeasure.dirac([1.0, -2.0])

        assert m.support.shape == (1, 2)
        assert m.abs_moment(2) == pytest.approx(5.0)

    def test_leave_one_out(self):
        """Test the measure of the other particles."""
        m = EmpiricalMeasure(points=[1.0, 2.0, 6.0])

        others = m.leave_one_out(2)

        assert others.size == 2
        assert others.mean()[0] == pytest.approx(1.5)

    def test_empirical_rejects_weights(self):
        """Test that empirical measures stay uniform."""
        with pytest.raises(ValueError):
            EmpiricalMeasure(points=[0.0, 1.0], masses=[0.2, 0.8])


class TestGridMeasure:
    """Tests for 1-D grid densities."""

    def test_gaussian_moments(self, standard_normal_grid):
        """Test that the trapezoid moments of N(0, 1) are accurate."""
        m = standard_normal_grid

        assert m.mass() == pytest.approx(1.0, abs=1e-12)
        assert m.mean()[0] == pytest.approx(0.0, abs=1e-12)
        assert moment(m, 2) == pytest.approx(1.0, abs=1e-6)
        assert moment(m, 4) == pytest.approx(3.0, abs=1e-5)

    def test_unnormalized_density_rejected(self):
        """Test that direct construction requires unit mass."""
        with pytest.raises(ValueError):
            GridMeasure1D(lo=0.0, hi=1.0, density=np.full(11, 2.0))

    def test_normalized_uniform(self):
        """Test normalization of a constant density."""
        m = GridMeasure1D.normalized(0.0, 2.0, np.ones(21))

        np.testing.assert_allclose(m.density, 0.5)
        assert m.boundary_ratio() == pytest.approx(1.0)

    def test_boundary_ratio_of_gaussian(self, standard_normal_grid):
        """Test that a wide grid leaves negligible boundary density."""
        assert standard_normal_grid.boundary_ratio() < 1e-8

    def test_log_density_does_not_overflow(self):
        """Test normalization of exp of large log values."""
        x = np.linspace(-1.0, 1.0, 101)

        m = GridMeasure1D.from_log_density(-1.0, 1.0, 1000.0 - x**2)

        assert np.all(np.isfinite(m.density))
        assert m.mass() == pytest.approx(1.0, abs=1e-12)

    def test_cdf_ends_at_one(self, standard_normal_grid):
        """Test the cumulative mass at the nodes."""
        cdf = standard_normal_grid.cdf_at_nodes()

        assert cdf[0] == 0.0
        assert cdf[-1] == 1.0
        assert np.all(np.diff(cdf) >= 0)


class TestCoupling:
    """Tests for transport plans."""

    def test_independent_marginals(self):
        """Test that the product coupling has the right marginals."""
        m = DiscreteMeasure(points=[0.0, 1.0], masses=[0.3, 0.7])
        m2 = DiscreteMeasure(points=[5.0, 6.0, 7.0])

        plan = Coupling.independent(m, m2)
        plan.validate_marginals()

        np.testing.assert_allclose(plan.first_marginal().masses, m.masses)
        np.testing.assert_allclose(plan.second_marginal().masses, m2.masses)

    def test_comonotone_is_optimal_in_one_dimension(self, rng):
        """Test that the quantile coupling attains W_2^2."""
        m = DiscreteMeasure(points=rng.normal(size=7), masses=rng.dirichlet(np.ones(7)))
        m2 = DiscreteMeasure(points=rng.normal(2.0, size=5), masses=rng.dirichlet(np.ones(5)))

        plan = Coupling.comonotone(m, m2)
        plan.validate_marginals(1e-10)

        assert plan.squared_displacement() == pytest.approx(wasserstein_1d(m, m2) ** 2, rel=1e-9)

    def test_antimonotone_costs_more(self, rng):
        """Test that reversing the order never improves transport."""
        m = EmpiricalMeasure(points=rng.normal(size=6))
        m2 = EmpiricalMeasure(points=rng.normal(size=6))

        assert (
            Coupling.antimonotone(m, m2).squared_displacement()
            >= Coupling.comonotone(m, m2).squared_displacement()
        )

    def test_permutation_coupling_requires_permutation(self):
        """Test validation of permutation couplings."""
        m = EmpiricalMeasure(points=[0.0, 1.0, 2.0])

        with pytest.raises(MeasureError):
            Coupling.from_permutation(m, m, [0, 0, 1])

    def test_invalid_marginals(self):
        """Test that a sub-probability plan is rejected."""
        plan = Coupling(rows=[0.0, 1.0], cols=[0.0, 1.0], mass=[[0.25, 0.0], [0.0, 0.25]])

        with pytest.raises(MeasureError):
            plan.validate_marginals()

    def test_shape_mismatch(self):
        """Test that mass must match the supports."""
        with pytest.raises(ValueError):
            Coupling(rows=[0.0, 1.0], cols=[0.0], mass=[[1.0, 0.0]])


class TestEntropyAndSampling:
    """Tests for relative entropy, moments and sampling."""

    def test_entropy_of_shifted_gaussian(self):
        """Test H(N(1,1) | N(0,1)) = 1/2."""
        mu = GridMeasure1D.gaussian(-10.0, 10.0, 2001, mean=1.0)
        nu = GridMeasure1D.gaussian(-10.0, 10.0, 2001)

        assert relative_entropy(mu, nu) == pytest.approx(0.5, abs=1e-6)
        assert relative_entropy(nu, nu) == pytest.approx(0.0, abs=1e-12)

    def test_entropy_needs_absolute_continuity(self):
        """Test that mass where the reference vanishes is an error."""
        mu = GridMeasure1D.uniform(0.0, 1.0, 11)
        nu = GridMeasure1D.normalized(0.0, 1.0, np.r_[np.zeros(5), np.ones(6)])

        with pytest.raises(AbsoluteContinuityError):
            relative_entropy(mu, nu)

    def test_entropy_needs_shared_grid(self):
        """Test that grids must match."""
        with pytest.raises(MeasureError):
            relative_entropy(GridMeasure1D.uniform(0.0, 1.0, 11), GridMeasure1D.uniform(0.0, 1.0, 21))

    def test_unsupported_moment(self, standard_normal_grid):
        """Test that only moments 1, 2 and 4 are offered."""
        with pytest.raises(MeasureError):
            moment(standard_normal_grid, 3)

    def test_sampling_is_deterministic(self, standard_normal_grid):
        """Test that a seed fixes the sample."""
        a = sample(standard_normal_grid, 500, seed=3)
        b = sample(standard_normal_grid, 500, seed=3)
        c = sample(standard_normal_grid, 500, seed=4)

        np.testing.assert_array_equal(a.points, b.points)
        assert not np.array_equal(a.points, c.points)
        assert a.mean()[0] == pytest.approx(0.0, abs=0.2)

    def test_sampling_atoms(self):
        """Test that samples land on the atoms with the right frequencies."""
        m = DiscreteMeasure(points=[-1.0, 1.0], masses=[0.25, 0.75])

        draws = sample(m, 4000, seed=0).points[:, 0]

        assert set(np.unique(draws)) == {-1.0, 1.0}
        assert np.mean(draws == 1.0) == pytest.approx(0.75, abs=0.03)


class TestParticleSum:
    """Tests for the per-replica reduction."""

    def test_independent_of_batch_size(self, rng):
        """Test that one replica's sum does not depend on its neighbours."""
        values = rng.normal(size=(5, 101, 2))

        full = particle_sum(values)
        alone = particle_sum(values[2:3])

        np.testing.assert_array_equal(full[2], alone[0])


class TestMeasureCsv:
    """Tests for measure CSV files."""

    def test_grid_file(self, tmp_path, standard_normal_grid):
        """Test that a grid density is read back exactly."""
        path = write_measure_csv(tmp_path / "m.csv", standard_normal_grid)

        back = read_measure_csv(path)

        assert isinstance(back, GridMeasure1D)
        np.testing.assert_array_equal(back.density, standard_normal_grid.density)

    def test_atoms_file(self, tmp_path):
        """Test that weighted atoms in R^2 are read back exactly."""
        m = DiscreteMeasure(points=[[0.1, 0.2], [1.0 / 3.0, -4.0]], masses=[0.4, 0.6])

        back = read_measure_csv(write_measure_csv(tmp_path / "atoms.csv", m))

        np.testing.assert_array_equal(back.points, m.points)
        np.testing.assert_array_equal(back.masses, m.masses)
