"""Tests for Wasserstein distances and the empirical rate."""

import itertools
import math

import numpy as np
import pytest

from core.errors import MeasureError, UnsupportedCaseError
from measures import (
    DiscreteMeasure,
    EmpiricalMeasure,
    GridMeasure1D,
    fournier_guillin_delta,
    wasserstein,
    wasserstein_1d,
    wasserstein_exact,
)


class TestWasserstein1D:
    """Tests for the quantile formula."""

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0])
    def test_between_diracs(self, p):
        """Test that two Diracs are their distance apart in every order."""
        assert wasserstein_1d(DiscreteMeasure.dirac(0.0), DiscreteMeasure.dirac(3.0), p) == pytest.approx(3.0)

    def test_two_atoms_against_dirac(self):
        """Test half the mass moving by one."""
        m = DiscreteMeasure(points=[0.0, 1.0])
        origin = DiscreteMeasure.dirac(0.0)

        assert wasserstein_1d(m, origin, 1.0) == pytest.approx(0.5)
        assert wasserstein_1d(m, origin, 2.0) == pytest.approx(math.sqrt(0.5))

    def test_symmetric_and_zero_on_diagonal(self, rng):
        """Test the metric axioms we rely on."""
        m = DiscreteMeasure(points=rng.normal(size=9), masses=rng.dirichlet(np.ones(9)))
        m2 = DiscreteMeasure(points=rng.normal(1.0, size=4))

        assert wasserstein_1d(m, m) == pytest.approx(0.0, abs=1e-12)
        assert wasserstein_1d(m, m2) == pytest.approx(wasserstein_1d(m2, m), rel=1e-12)

    def test_shifted_gaussian_grids(self):
        """Test W_2(N(0,1), N(1,1)) = 1 on a shared grid."""
        m = GridMeasure1D.gaussian(-10.0, 10.0, 2001)
        m2 = GridMeasure1D.gaussian(-10.0, 10.0, 2001, mean=1.0)

        assert wasserstein_1d(m, m2) == pytest.approx(1.0, abs=1e-6)

    def test_grid_against_dirac(self, standard_normal_grid):
        """Test W_2(delta_0, N(0,1)) = 1 up to cell resolution."""
        assert wasserstein(standard_normal_grid, DiscreteMeasure.dirac(0.0)) == pytest.approx(1.0, abs=1e-4)

    def test_rejects_small_order(self):
        """Test that p < 1 is refused."""
        with pytest.raises(MeasureError):
            wasserstein_1d(DiscreteMeasure.dirac(0.0), DiscreteMeasure.dirac(1.0), p=0.5)

    def test_rejects_higher_dimension(self):
        """Test that the quantile formula is 1-D only."""
        with pytest.raises(MeasureError):
            wasserstein_1d(DiscreteMeasure.dirac([0.0, 0.0]), DiscreteMeasure.dirac([1.0, 0.0]))


class TestWassersteinExact:
    """Tests for the assignment solver."""

    def test_agrees_with_quantiles_in_one_dimension(self, rng):
        """Test that sorting and assignment give the same W_2."""
        m = EmpiricalMeasure(points=rng.normal(size=20))
        m2 = EmpiricalMeasure(points=rng.normal(0.5, 2.0, size=20))

        assert wasserstein_exact(m, m2) == pytest.approx(wasserstein_1d(m, m2), rel=1e-10)

    def test_translation_in_two_dimensions(self, rng):
        """Test that translating a cloud costs the length of the shift."""
        x = rng.normal(size=(12, 2))
        shift = np.array([3.0, 4.0])

        assert wasserstein(EmpiricalMeasure(points=x), EmpiricalMeasure(points=x + shift)) == pytest.approx(5.0)

    @pytest.mark.parametrize("n", [2, 4, 6])
    @pytest.mark.parametrize("p", [1.0, 2.0])
    def test_matches_best_permutation(self, rng, n, p):
        """Test the assignment against an exhaustive search over matchings."""
        x = rng.normal(size=(n, 2))
        y = rng.normal(1.0, 1.5, size=(n, 2))
        cost = np.linalg.norm(x[:, None, :] - y[None, :, :], axis=-1) ** p
        best = min(cost[np.arange(n), list(perm)].mean() for perm in itertools.permutations(range(n)))

        exact = wasserstein_exact(EmpiricalMeasure(points=x), EmpiricalMeasure(points=y), p)

        assert exact == pytest.approx(best ** (1.0 / p), rel=1e-12)

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0])
    def test_triangle_inequality(self, p):
        """Test W_p(a, c) <= W_p(a, b) + W_p(b, c) on random triples."""
        rng = np.random.default_rng(99)
        for _ in range(25):
            a, b, c = (EmpiricalMeasure(points=rng.normal(rng.normal(), 1.0, size=(8, 2))) for _ in range(3))
            u, v, w = (
                DiscreteMeasure(points=rng.normal(size=5), masses=rng.dirichlet(np.ones(5))) for _ in range(3)
            )

            assert wasserstein_exact(a, c, p) <= wasserstein_exact(a, b, p) + wasserstein_exact(b, c, p) + 1e-12
            assert wasserstein_1d(u, w, p) <= wasserstein_1d(u, v, p) + wasserstein_1d(v, w, p) + 1e-12

    def test_size_limits(self, rng):
        """Test the unequal-size and atom-count limits."""
        with pytest.raises(MeasureError):
            wasserstein_exact(EmpiricalMeasure(points=rng.normal(size=3)), EmpiricalMeasure(points=rng.normal(size=4)))
        big = EmpiricalMeasure(points=rng.normal(size=(65, 2)))
        with pytest.raises(MeasureError):
            wasserstein_exact(big, big)

    def test_needs_uniform_weights(self):
        """Test that weighted atoms are refused."""
        m = DiscreteMeasure(points=[[0.0, 0.0], [1.0, 1.0]], masses=[0.2, 0.8])

        with pytest.raises(MeasureError):
            wasserstein_exact(m, m)


class TestFournierGuillinDelta:
    """Tests for delta_{N,p}."""

    def test_low_dimension_branch(self):
        """Test p > d/2: N^{-1/2} + N^{-(2-p)/2}."""
        assert fournier_guillin_delta(100, 1.5, 1) == pytest.approx(0.1 + 100**-0.25)

    def test_high_dimension_branch(self):
        """Test p < d/2: N^{-p/d} + N^{-(2-p)/2}."""
        assert fournier_guillin_delta(1000, 1.0, 3) == pytest.approx(0.1 + 1000**-0.5)

    def test_critical_branch(self):
        """Test d = 2p with the logarithmic factor."""
        n = 400
        expected = n**-0.5 * math.log1p(n) + n**-0.25

        assert fournier_guillin_delta(n, 1.5, 3) == pytest.approx(expected)

    def test_decreasing_in_n(self):
        """Test that the rate improves with more samples."""
        values = [fournier_guillin_delta(n, 1.5, 1) for n in (10, 100, 1000)]

        assert values[0] > values[1] > values[2]

    @pytest.mark.parametrize("n, p, d", [(100, 1.0, 1), (100, 1.0, 2), (100, 2.0, 1), (0, 1.5, 1)])
    def test_uncovered_cases(self, n, p, d):
        """Test that gaps between branches raise."""
        with pytest.raises(UnsupportedCaseError):
            fournier_guillin_delta(n, p, d)
