"""Tests for noise streams, the replica pool and particle simulations."""

import numpy as np
import pytest

from core.errors import BlowUpError, ConfigError
from dynamics import (
    MeanFieldReference,
    PermutedNoise,
    PhiloxNoise,
    ZeroNoise,
    gaussian_initial,
    lq_coupled_rate,
    mean_field_flow_lq,
    simulate_coupled_pair,
    simulate_interacting,
    simulate_poc_coupling,
)
from dynamics.mean_field import lq_euler_means
from dynamics.particles import interaction_drift
from dynamics.pool import run_replicas, split_replicas
from games import GameInstance, GaussianPotential
from games.builtin import LQCost, SincosCost
from schemas.config import SdeConfig


class TestNoise:
    """Tests for keyed Gaussian streams."""

    def test_streams_are_keyed(self):
        """Test that (seed, tag, replica) fixes the stream."""
        a = PhiloxNoise(5).stream(2, 4, 1)
        b = PhiloxNoise(5).stream(2, 4, 1)
        other_replica = PhiloxNoise(5).stream(3, 4, 1)
        other_tag = PhiloxNoise(5, tag="proxy").stream(2, 4, 1)

        first = a.draw()

        np.testing.assert_array_equal(first, b.draw())
        assert not np.array_equal(first, other_replica.draw())
        assert not np.array_equal(first, other_tag.draw())
        assert not np.array_equal(a.draw(), first)

    def test_keyed_by_replica_not_particle(self):
        """Test that one stream fills each step's block row by row."""
        small = PhiloxNoise(5).stream(0, 4, 2)
        large = PhiloxNoise(5).stream(0, 5, 2)

        first_small, first_large = small.draw(), large.draw()

        np.testing.assert_array_equal(first_large[:4], first_small)
        assert not np.array_equal(large.draw()[:4], small.draw())

    def test_zero_noise(self):
        """Test the deterministic source."""
        assert not ZeroNoise().stream(0, 3, 2).draw().any()

    def test_permuted_noise(self):
        """Test that particle i receives row perm[i] only in the listed replicas."""
        perm = np.array([2, 0, 1])
        base = PhiloxNoise(1)
        permuted = PermutedNoise(base, perm, replicas=[0])

        block = base.stream(0, 3, 1).draw()

        np.testing.assert_array_equal(permuted.stream(0, 3, 1).draw(), block[perm])
        np.testing.assert_array_equal(permuted.stream(1, 3, 1).draw(), base.stream(1, 3, 1).draw())


class TestPool:
    """Tests for replica chunking."""

    def test_split_replicas(self):
        """Test contiguous chunks, never more than the replicas."""
        chunks = split_replicas(5, 2)

        assert [c.tolist() for c in chunks] == [[0, 1, 2], [3, 4]]
        assert len(split_replicas(2, 8)) == 2

    def test_results_in_replica_order(self):
        """Test that chunk outputs are concatenated by replica index."""
        out = run_replicas(lambda idx: {"r": idx.astype(float) * 10}, replicas=7, workers=3)

        np.testing.assert_array_equal(out["r"], np.arange(7) * 10.0)


class TestInteractingSystem:
    """Tests for the symmetric N-particle system."""

    def test_worker_count_does_not_change_results(self, lq_instance, short_sde):
        """Test bitwise identical runs for one and several workers."""
        x0 = gaussian_initial(20, 1, short_sde.replicas, seed=3)

        one = simulate_interacting(lq_instance, 20, x0, short_sde, workers=1)
        many = simulate_interacting(lq_instance, 20, x0, short_sde, workers=3)

        np.testing.assert_array_equal(one.final, many.final)
        np.testing.assert_array_equal(one.values["second_moment"], many.values["second_moment"])

    def test_single_particle_sees_itself(self):
        """Test the N = 1 convention: the interaction is against its own Dirac."""
        x = np.array([[[2.0]], [[-1.0]]])

        drift = interaction_drift(LQCost(a=1.0, b=0.5), x)

        np.testing.assert_allclose(drift, 1.5 * x)

    def test_empirical_mean_follows_euler_recursion(self, lq_instance):
        """Test that without noise the LQ particle mean decays geometrically."""
        cfg = SdeConfig(dt=0.01, t_end=1.0, record_every=10)
        x0 = gaussian_initial(30, 1, 1, seed=0, mean=1.0)

        result = simulate_interacting(lq_instance, 30, x0, cfg, noise=ZeroNoise())

        expected = lq_euler_means(lq_instance, x0[0].mean(axis=0), cfg.dt, cfg.n_steps)[cfg.record_steps, 0]
        np.testing.assert_allclose(result.series("mean").v, expected, rtol=1e-9, atol=1e-12)

    def test_blow_up_is_reported(self, lq_instance):
        """Test that an unstable step size aborts with the step number."""
        cfg = SdeConfig(dt=10.0, t_end=200.0)

        with pytest.raises(BlowUpError) as exc:
            simulate_interacting(lq_instance, 5, np.ones((5, 1)), cfg, noise=ZeroNoise())

        assert exc.value.step < 20
        assert exc.value.replica == 0

    def test_snapshots_and_reference(self, lq_instance, short_sde):
        """Test recorded snapshots and the distance to a reference measure."""
        m0 = lq_instance.cost.analytic_mfe()

        result = simulate_interacting(
            lq_instance, 10, np.zeros((10, 1)), short_sde, reference=m0, snapshots=True
        )

        states = result.snapshot_states(1)
        assert len(states) == len(short_sde.record_steps)
        assert states[0].positions.shape == (10, 1)
        assert result.values["w2_to_reference"][:, 0] == pytest.approx(0.0)
        assert np.all(result.stderr("second_moment") >= 0)

    def test_rejects_wrong_initial_shape(self, lq_instance, short_sde):
        """Test that the initial profile must match N and d."""
        with pytest.raises(ConfigError):
            simulate_interacting(lq_instance, 10, np.zeros((9, 1)), short_sde)


class TestMeanField:
    """Tests for the closed-form LQ flow."""

    def test_gaussian_flow(self, lq_instance):
        """Test the mean and variance ODE at 0 and for large t."""
        assert mean_field_flow_lq(lq_instance, 0.0, mean0=2.0, var0=3.0) == pytest.approx((2.0, 3.0))
        mean, var = mean_field_flow_lq(lq_instance, 50.0, mean0=2.0, var0=3.0)
        assert mean == pytest.approx(0.0, abs=1e-12)
        assert var == pytest.approx(0.25 / 1.25)

    def test_coupled_rates(self, lq_instance):
        """Test the synchronous-coupling rates for both offset patterns."""
        assert lq_coupled_rate(lq_instance, 2) == pytest.approx(2.0 * (1.0 - 0.5 + 0.25))
        assert lq_coupled_rate(lq_instance, 10, "constant") == pytest.approx(2.0 * 1.75)

    def test_needs_lq(self):
        """Test that other games have no closed form."""
        instance = GameInstance(cost=SincosCost(), potential=GaussianPotential(), sigma=0.1)

        with pytest.raises(ConfigError):
            mean_field_flow_lq(instance, 1.0)


class TestCouplings:
    """Tests for synchronously coupled systems."""

    def test_constant_offset_contracts_exactly(self, lq_instance):
        """Test gap_k = c^2 (1 - (a + b + sigma l_U) dt)^(2k) under shared noise."""
        cfg = SdeConfig(dt=0.01, t_end=1.0, record_every=20, replicas=2, seed=4)
        x0 = gaussian_initial(8, 1, 2, seed=9)

        result = simulate_coupled_pair(lq_instance, 8, x0, x0 + 0.5, cfg)

        factor = (1.0 - 1.75 * cfg.dt) ** (2 * cfg.record_steps)
        np.testing.assert_allclose(result.series("gap").v, 0.25 * factor, rtol=1e-8)

    def test_identical_starts_stay_together(self, lq_instance, short_sde):
        """Test that equal initial states never separate."""
        x0 = gaussian_initial(6, 1, short_sde.replicas, seed=2)

        result = simulate_coupled_pair(lq_instance, 6, x0, x0, short_sde)

        assert not result.values["gap"].any()

    @pytest.mark.parametrize("reference", [MeanFieldReference.exact_lq(), MeanFieldReference.proxy(80)])
    def test_poc_coupling_starts_at_zero(self, lq_instance, short_sde, reference):
        """Test that both systems share their initial draw."""
        result = simulate_poc_coupling(lq_instance, 10, short_sde, reference)

        assert not result.values["scaled_gap"][:, 0].any()
        assert np.all(result.values["scaled_gap"][:, -1] > 0)

    def test_proxy_must_be_large(self, lq_instance, short_sde):
        """Test M >= 8N."""
        with pytest.raises(ConfigError):
            simulate_poc_coupling(lq_instance, 10, short_sde, MeanFieldReference.proxy(40))

    def test_coupled_pair_ignores_worker_count(self, lq_instance, short_sde):
        """Test bitwise identical coupled gaps for one and several workers."""
        x0 = gaussian_initial(12, 1, short_sde.replicas, seed=5)
        y0 = x0 + 0.3

        one = simulate_coupled_pair(lq_instance, 12, x0, y0, short_sde, workers=1)
        many = simulate_coupled_pair(lq_instance, 12, x0, y0, short_sde, workers=3)

        np.testing.assert_array_equal(one.values["gap"], many.values["gap"])
        np.testing.assert_array_equal(one.final, many.final)

    @pytest.mark.parametrize("reference", [MeanFieldReference.exact_lq(), MeanFieldReference.proxy(80)])
    def test_poc_coupling_ignores_worker_count(self, lq_instance, short_sde, reference):
        """Test bitwise identical scaled gaps for one and several workers."""
        one = simulate_poc_coupling(lq_instance, 10, short_sde, reference, workers=1)
        many = simulate_poc_coupling(lq_instance, 10, short_sde, reference, workers=4)

        np.testing.assert_array_equal(one.values["scaled_gap"], many.values["scaled_gap"])


class TestWeakConvergence:
    """Tests for the time-step error of Euler-Maruyama."""

    def test_second_moment_error_halves_with_dt(self, lq_instance):
        """Test that the LQ second-moment error at t = 2 shrinks at first order in dt."""
        n, t_end = 200_000, 2.0
        x0 = gaussian_initial(n, 1, 1, seed=17, mean=1.0)
        mean, var = mean_field_flow_lq(lq_instance, t_end, mean0=1.0, var0=1.0)
        exact = mean**2 + var

        errors = []
        for dt in (0.2, 0.1, 0.05):
            cfg = SdeConfig(dt=dt, t_end=t_end, record_every=int(round(t_end / dt)), seed=8)
            result = simulate_interacting(lq_instance, n, x0, cfg)
            errors.append(abs(result.series("second_moment").v[-1] - exact))

        assert errors[0] > errors[1] > errors[2]
        assert 2.5 < errors[0] / errors[2] < 6.5
        for dt, err in zip((0.2, 0.1, 0.05), errors):
            assert err <= 0.2 * dt
