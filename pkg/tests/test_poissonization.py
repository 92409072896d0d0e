import math

import numpy as np
import pytest
from scipy.special import ive
from scipy.stats import poisson

from core.domain.entities.kernel_snapshot import KernelKind
from core.domain.exceptions import ParameterError, WindowError
from core.domain.services.markov_operator import laplacian
from core.domain.services.poissonization import (
    poisson_weights,
    poissonized,
    poissonized_many,
    truncation_order,
)


class TestTruncation:
    @pytest.mark.parametrize("t", [0.5, 1.0, 10.0, 100.0, 1000.0])
    @pytest.mark.parametrize("tol", [1e-6, 1e-10, 1e-12])
    def test_smallest_order_below_tolerance(self, t, tol):
        order = truncation_order(t, tol)
        assert poisson.sf(order, t) < tol
        assert order == 0 or poisson.sf(order - 1, t) >= tol

    def test_zero_time(self):
        assert truncation_order(0.0, 1e-12) == 0

    @pytest.mark.parametrize("tol", [0.0, -1e-12, 1e-5, 0.5])
    def test_tolerance_range(self, tol):
        with pytest.raises(ParameterError):
            truncation_order(1.0, tol)

    @pytest.mark.parametrize("t", [-1.0, float("inf"), float("nan")])
    def test_time_must_be_finite_and_nonnegative(self, t):
        with pytest.raises(ParameterError):
            truncation_order(t, 1e-12)

    def test_weights_are_poisson_probabilities(self):
        weights = poisson_weights(3.0, 4)
        expected = [math.exp(-3.0) * 3.0 ** n / math.factorial(n) for n in range(5)]
        np.testing.assert_allclose(weights, expected, rtol=1e-14)


class TestPoissonizedKernel:
    @pytest.mark.parametrize("t", [1.0, 10.0, 100.0])
    def test_simple_walk_matches_bessel(self, constant_env, t):
        env = constant_env(0.5, 400)
        snapshot = poissonized(env, t, 1e-12)
        reach = math.floor(3.0 * math.sqrt(t))
        sites = np.arange(-reach, reach + 1)
        exact = ive(np.abs(sites), t)
        assert float(np.max(np.abs(snapshot.f.on_window(-reach, reach) - exact))) <= 1e-10

    def test_snapshot_metadata(self, constant_env):
        env = constant_env(0.5, 100)
        snapshot = poissonized(env, 4.0, 1e-10)
        assert snapshot.kind is KernelKind.POISSONIZED
        assert snapshot.time == 4.0
        assert snapshot.tolerance == 1e-10
        assert snapshot.truncation_order == truncation_order(4.0, 1e-10)
        assert snapshot.f.window == (-snapshot.truncation_order, snapshot.truncation_order)
        assert snapshot.header()["t"] == 4.0

    def test_many_times_agree_with_single_times(self, uniform_env):
        env = uniform_env(half_width=200)
        ts = [1.0, 5.0, 20.0]
        for many in poissonized_many(env, ts, 1e-12):
            single = poissonized(env, many.time, 1e-12)
            assert many.f == single.f

    def test_zero_time_is_point_mass(self, uniform_env):
        snapshot = poissonized(uniform_env(half_width=10), 0.0, 1e-12)
        assert snapshot.f.value_at(0) == 1.0
        assert snapshot.f.total() == 1.0

    def test_truncation_error_is_within_tolerance(self, uniform_env):
        env = uniform_env(half_width=300)
        t, tol = 8.0, 1e-6
        coarse = poissonized(env, t, tol).f
        fine = poissonized(env, t, 1e-13).f
        lo, hi = fine.window
        assert float(np.max(np.abs(coarse.on_window(lo, hi) - fine.on_window(lo, hi)))) <= tol + 1e-12

    def test_values_are_subprobabilities(self, uniform_env):
        snapshot = poissonized(uniform_env(half_width=300), 2.0, 1e-12)
        assert float(np.min(snapshot.f.values)) >= 0.0
        assert float(np.max(snapshot.f.values)) <= 1.0

    def test_window_must_cover_truncation_order(self, constant_env):
        with pytest.raises(WindowError):
            poissonized(constant_env(0.5, 20), 50.0, 1e-12)

    def test_empty_time_list(self, constant_env):
        assert poissonized_many(constant_env(0.5, 5), [], 1e-12) == []


class TestHeatEquation:
    @staticmethod
    def residual(env, t, h, reach=10, tol=1e-15):
        later = poissonized(env, t + h, tol).f.on_window(-reach, reach)
        earlier = poissonized(env, t - h, tol).f.on_window(-reach, reach)
        lap = laplacian(poissonized(env, t, tol).f).on_window(-reach, reach)
        drift = (later - earlier) / (2.0 * h)
        return float(np.max(np.abs(drift - env.omega_slice(-reach, reach) * lap)))

    def test_central_difference_residual_is_second_order(self, uniform_env):
        env = uniform_env(seed=5, half_width=200)
        coarse = self.residual(env, 10.0, 1e-2)
        fine = self.residual(env, 10.0, 1e-3)
        assert coarse <= 1e-6
        assert fine <= 0.02 * coarse
