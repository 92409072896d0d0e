"""Full-scale checks; run with `pytest -m slow`."""

import math

import numpy as np
import pytest

from core.domain.entities.environment import Environment
from core.domain.services import diagnostics
from core.domain.services.evolution_trace import collect_trace
from core.domain.services.figure_one import figure1
from core.domain.services.kernel_evolution import (
    forward_pmf,
    iter_forward,
    iter_reversed_a,
    iter_reversed_a_heatstep,
    pmf_mean_variance,
)
from core.domain.services.local_limit import convergence_curve
from core.domain.services.monte_carlo import kolmogorov_distance, sample_endpoints, total_variation
from core.domain.value_objects.environment_law import ConstantLaw, PeriodicLaw, UniformLaw

pytestmark = pytest.mark.slow

HORIZON = 4096


def uniform(seed, half_width, a=0.1, b=0.5):
    return Environment.generate(UniformLaw(a, b), (-half_width, half_width), seed)


def simple_walk(half_width):
    return Environment.generate(ConstantLaw(0.5), (-half_width, half_width))


@pytest.mark.parametrize("seed", range(20))
def test_heat_equation_and_reversal_identity(seed):
    env = uniform(seed, HORIZON + 2)
    omega_0 = env.omega(0)
    streams = zip(iter_reversed_a(env, HORIZON), iter_reversed_a_heatstep(env, HORIZON), iter_forward(env, HORIZON))
    for (n, a), (_, heat), (_, pmf) in streams:
        assert np.max(np.abs(a.values - heat.on_window(a.lo, a.hi))) <= 1e-13, n
        lhs = omega_0 * a.on_window(pmf.lo, pmf.hi)
        rhs = env.omega_slice(pmf.lo, pmf.hi) * pmf.values
        assert np.max(np.abs(lhs - rhs)) <= 1e-12, n


@pytest.mark.parametrize("seed", range(20))
def test_gradient_lemmas_at_full_horizon(seed):
    env = uniform(100 + seed, HORIZON + 4)
    trace = collect_trace(env, HORIZON + 1)
    assert diagnostics.gradient_monotonicity(env, HORIZON, trace).passed
    for n in (1, 4, 16, 64):
        assert diagnostics.lemma_bound_b(env, n, HORIZON, trace).passed


@pytest.mark.parametrize("seed", range(10))
def test_lazy_environments_return_monotonically(seed):
    env = uniform(200 + seed, 2 * 1024 + 4, a=0.05, b=0.25)
    trace = collect_trace(env, 2 * 1024 + 2)
    assert np.max(trace.return_increments()) <= 1e-14


def test_simple_walk_periodicity_dichotomy():
    env = simple_walk((1 << 15) + 4)
    ns = [1 << j for j in range(10, 16)]
    pmf_errors = convergence_curve(env, ns, variant="pmf")["sup_error"]
    assert np.all(pmf_errors > 0.15)
    g_errors = convergence_curve(env, [ns[0], ns[-1]], variant="g")["sup_error"]
    assert g_errors.iloc[-1] <= 0.5 * g_errors.iloc[0]


def test_quenched_local_limit_and_figure():
    env = uniform(2024, (1 << 15) + 4)
    errors = convergence_curve(env, [1 << 11, 1 << 15], variant="g")["sup_error"]
    assert errors.iloc[-1] <= 0.5 * errors.iloc[0]
    assert figure1(env, 1 << 15).relative_distance <= 0.02


def test_effective_constant_matches_variance():
    n = 1 << 14
    env = Environment.generate(PeriodicLaw((0.25, 0.5)), (-n - 2, n + 2))
    mu = diagnostics.estimate_mu(env, (-2.0, 2.0), math.sqrt(n))
    assert mu == pytest.approx(3.0)
    _, variance = pmf_mean_variance(forward_pmf(env, n))
    sigma2 = diagnostics.sigma2_from_mu(mu)
    assert abs(variance / n - sigma2) <= 0.02 * sigma2


def test_heat_kernel_constant_for_simple_walk():
    record = diagnostics.a3_statistic(simple_walk(HORIZON + 2), HORIZON)
    assert abs(record.constants["D_hat"] - math.sqrt(2.0 / math.pi)) <= 0.01


@pytest.mark.parametrize("seed", range(10))
def test_heat_kernel_constant_stabilizes(seed):
    # sqrt(n) max_k p_n(k) tracks max_k 1/omega_k over the sqrt(n) window, so b/a bounds its growth
    env = uniform(300 + seed, 2 * HORIZON + 2, a=0.24, b=0.241)
    trace = collect_trace(env, 2 * HORIZON)
    late = diagnostics.a3_statistic(env, 2 * HORIZON, trace).constants["D_hat"]
    early = diagnostics.a3_statistic(env, HORIZON, trace).constants["D_hat"]
    assert late / early <= 1.01


def test_monte_carlo_agrees_with_exact_pmf():
    # a narrow range of small weights keeps both the support and the site-to-site pmf modulation small
    env = uniform(77, HORIZON + 2, a=0.045, b=0.05)
    samples = sample_endpoints(env, HORIZON, 100_000, seed=5, jobs=4)
    exact = forward_pmf(env, HORIZON)
    _, variance = pmf_mean_variance(exact)
    assert total_variation(samples, exact) <= 0.02
    assert kolmogorov_distance(samples, HORIZON, variance / HORIZON) <= 0.02
