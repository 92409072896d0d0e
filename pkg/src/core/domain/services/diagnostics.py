"""
Numerical checks of the a priori gradient lemmas, heat-kernel and Nash-type bounds,
and estimates of the environment constants.

Infinite sums and suprema are reported as partial quantities with the horizon
recorded. An inequality is asserted only where the partial quantity keeps it
rigorous. Every function accepts an optional EvolutionTrace so that several
diagnostics of one environment share a single pass over a(n,.).
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.domain.entities.diagnostics_report import CheckCategory, CheckRecord
from core.domain.entities.environment import Environment
from core.domain.exceptions import EmptySampleError, ParameterError
from core.domain.services.evolution_trace import EvolutionTrace, collect_trace
from core.domain.services.markov_operator import (
    dirichlet_E2,
    gradient,
    l1_pi,
    l2_pi,
    one_step_ultracontractivity,
)
from core.domain.services.poissonization import poissonized_many
from core.domain.value_objects.lattice_function import LatticeFunction
from infrastructure.logging import get_logger, log_check_result

logger = get_logger(__name__)

MONOTONE_SLACK = 1e-12
LEMMA_SLACK = 1e-10
HEAT_KERNEL_GROWTH = 1.01
HEAT_KERNEL_BURN_IN = 64
EQUICONTINUITY_GROWTH = 1.1
EQUICONTINUITY_BURN_IN = 1 << 10

TrialFunction = Tuple[str, LatticeFunction]


def _trace_for(env: Environment, horizon: int, trace: Optional[EvolutionTrace], purpose: str, keep=()) -> EvolutionTrace:
    if trace is None:
        return collect_trace(env, horizon, keep)
    trace.require(horizon, purpose)
    return trace


def _logged(record: CheckRecord) -> CheckRecord:
    event = log_check_result(record.name, float(record.violation), record.passed, category=record.category.value)
    if record.passed:
        logger.info(f"check_completed | check=<{record.name}>", **event)
    else:
        logger.warning(f"check_failed | check=<{record.name}>", **event)
    return record


def gradient_monotonicity(env: Environment, N: int, trace: Optional[EvolutionTrace] = None) -> CheckRecord:
    """n -> ||grad a(n,.)||^2 and n -> ||grad b(n,.)||^2 are non-increasing on 0..N"""
    if N < 2:
        raise ParameterError(f"invalid_horizon | N=<{N}> | expected N >= 2")
    trace = _trace_for(env, N + 1, trace, "gradient_monotonicity")
    g_a = trace.grad_a[:N + 1]
    g_b = trace.grad_b[:N + 1]
    violation = max(float(np.max(np.diff(g_a))), float(np.max(np.diff(g_b))))
    return _logged(CheckRecord(
        name="gradient_monotonicity",
        category=CheckCategory.LEMMA,
        params={"N": N},
        statistics={"g_a": g_a, "g_b": g_b},
        bound={"rule": "g(n+1) <= g(n)"},
        violation=violation,
        slack=MONOTONE_SLACK,
    ))


def lemma_bound_b(env: Environment, n: int, N: int, trace: Optional[EvolutionTrace] = None) -> CheckRecord:
    """sum_{m=n}^{N} ||grad b(m,.)||^2 <= pi_0 a(2n,0)"""
    if not 1 <= n <= N:
        raise ParameterError(f"invalid_range | n=<{n}> | N=<{N}> | expected 1 <= n <= N")
    trace = _trace_for(env, max(2 * n, N + 1), trace, "lemma_bound_b")
    pi_0 = env.pi_weight(0)
    partial = np.cumsum(trace.grad_b[n:N + 1])
    bound = pi_0 * float(trace.a_origin[2 * n])
    return _logged(CheckRecord(
        name=f"lemma_bound_b[n={n}]",
        category=CheckCategory.LEMMA,
        params={"n": n, "N": N},
        statistics={"partial_sums": partial},
        bound={"pi0_a_2n_0": bound},
        violation=float(partial[-1]) - bound,
        slack=LEMMA_SLACK,
    ))


def lemma_bound_a(env: Environment, n: int, N: int, trace: Optional[EvolutionTrace] = None) -> CheckRecord:
    """
    sum_{m=n}^{N'} ||grad a(m,.)||^2 <= pi_0 max_{N'' <= N'} S(N'') + pi_0 a(2n,0) for every N' <= N,
    where S(N'') = sum_{m=n}^{N''} (a(2m+2,0) - a(2m+1,0)).

    The left side telescopes to pi_0 (a(2n,0) - a(2N'+2,0) + S(N')), so each truncated
    inequality is rigorous on its own.
    """
    if not 1 <= n <= N:
        raise ParameterError(f"invalid_range | n=<{n}> | N=<{N}> | expected 1 <= n <= N")
    trace = _trace_for(env, 2 * N + 2, trace, "lemma_bound_a")
    pi_0 = env.pi_weight(0)
    partial = np.cumsum(trace.grad_a[n:N + 1])
    increments = trace.return_increments(2 * N + 2)[n:N + 1]
    running_sup = np.maximum.accumulate(np.cumsum(increments))
    bound = pi_0 * running_sup + pi_0 * float(trace.a_origin[2 * n])
    return _logged(CheckRecord(
        name=f"lemma_bound_a[n={n}]",
        category=CheckCategory.LEMMA,
        params={"n": n, "N": N},
        statistics={"partial_sums": partial, "running_sup": running_sup},
        bound={"bound": bound},
        violation=float(np.max(partial - bound)),
        slack=LEMMA_SLACK,
    ))


def a4_statistic(env: Environment, N: int, trace: Optional[EvolutionTrace] = None) -> CheckRecord:
    """
    sqrt(n) max_{N' >= n} sum_{m=n}^{N'} (a(2m+2,0) - a(2m+1,0)) as a curve in n,
    using every m with 2m+2 <= N. Boundedness is reported, not asserted.
    """
    if N < 1:
        raise ParameterError(f"invalid_horizon | N=<{N}> | expected N >= 1")
    trace = _trace_for(env, N, trace, "a4_statistic")
    increments = trace.return_increments(N)
    if increments.size == 0:
        curve = np.zeros(0)
    else:
        cumulative = np.cumsum(increments)
        before = np.concatenate(([0.0], cumulative[:-1]))
        suffix_max = np.maximum.accumulate(cumulative[::-1])[::-1]
        curve = np.sqrt(np.arange(increments.size)) * (suffix_max - before)
    statistic = float(np.max(curve)) if curve.size else 0.0
    return _logged(CheckRecord(
        name="a4_statistic",
        category=CheckCategory.ESTIMATE,
        params={"N": N},
        statistics={"curve": curve, "max_increment": float(np.max(increments)) if increments.size else 0.0},
        constants={"a4_sup": statistic},
        note="partial double supremum; boundedness is judged by inspection",
    ))


def a3_statistic(
    env: Environment,
    N: int,
    trace: Optional[EvolutionTrace] = None,
    ts: Sequence[float] = (),
    tol: float = 1e-12,
) -> CheckRecord:
    """
    D(N) = max_{1<=n<=N} sqrt(n) max_k (P^n)_{0,k}, with the stabilization test
    D(N) <= 1.01 D(N/2) once N/2 is past the burn-in. When ts is given the
    continuous-time statistic max_t sqrt(t) max_k (P^t)_{0,k} is reported as well.
    """
    if N < 1:
        raise ParameterError(f"invalid_horizon | N=<{N}> | expected N >= 1")
    trace = _trace_for(env, N, trace, "a3_statistic")
    steps = np.arange(1, N + 1)
    running = np.maximum.accumulate(np.sqrt(steps) * trace.pmf_max[1:N + 1])
    d_hat = float(running[-1])

    half = N // 2
    if half >= HEAT_KERNEL_BURN_IN:
        violation = d_hat - HEAT_KERNEL_GROWTH * float(running[half - 1])
        note = f"D(N) <= {HEAT_KERNEL_GROWTH} D(N/2)"
    else:
        violation = 0.0
        note = "burn-in not reached; stabilization not tested"

    constants = {"D_hat": d_hat}
    statistics = {"running_max": running}
    if len(ts):
        omega_0 = env.omega(0)
        values = []
        for snapshot in poissonized_many(env, ts, tol):
            f = snapshot.f
            values.append(math.sqrt(snapshot.time) * omega_0 * float(np.max(f.values / env.omega_slice(f.lo, f.hi))))
        statistics["continuous"] = np.asarray(values)
        constants["D_hat_continuous"] = float(np.max(values))

    return _logged(CheckRecord(
        name="a3_statistic",
        category=CheckCategory.STABILIZATION,
        params={"N": N, "ts": list(ts)},
        statistics=statistics,
        bound={"growth_factor": HEAT_KERNEL_GROWTH},
        violation=violation,
        constants=constants,
        note=note,
    ))


def estimate_mu(env: Environment, interval: Tuple[float, float], T: float) -> float:
    """Average of 1/omega over T*interval"""
    x, y = interval
    return env.average_inverse_omega(x, y, T)


def sigma2_from_mu(mu: float) -> float:
    """sigma^2 = 2 / mu"""
    if not (mu > 0.0 and math.isfinite(mu)):
        raise ParameterError(f"invalid_mu | mu=<{mu}> | expected > 0")
    return 2.0 / mu


def effective_constants(
    env: Environment,
    interval: Tuple[float, float],
    T: float,
    variance_ratio: Optional[float] = None,
) -> CheckRecord:
    """mu_hat and sigma2_hat, optionally compared with Var(X_n)/n"""
    mu = estimate_mu(env, interval, T)
    sigma2 = sigma2_from_mu(mu)
    constants = {"mu_hat": mu, "sigma2_hat": sigma2}
    statistics = {}
    if variance_ratio is not None:
        constants["sigma2_variance"] = variance_ratio
        statistics["relative_gap"] = abs(variance_ratio - sigma2) / sigma2
    return _logged(CheckRecord(
        name="effective_constants",
        category=CheckCategory.ESTIMATE,
        params={"interval": list(interval), "T": T},
        statistics=statistics,
        constants=constants,
    ))


def nash_trial_functions(env: Environment, seed: int = 0, max_width: int = 256) -> List[TrialFunction]:
    """
    Blocks of widths 1, 2, 4, ..., blocks with seeded random signs, discretized
    Gaussians and hats, all centred near 0 and kept two sites inside the window.
    """
    env.require_window(-2, 2, "nash_trial_functions")
    reach = min(-env.lo, env.hi) - 2
    rng = np.random.Generator(np.random.PCG64(seed))
    trials: List[TrialFunction] = []
    width = 1
    while width <= max_width and width - 1 <= reach:
        trials.append((f"block_w{width}", LatticeFunction(lo=0, values=np.ones(width))))
        if width >= 2:
            trials.append((f"signs_w{width}", LatticeFunction(lo=0, values=rng.choice([-1.0, 1.0], size=width))))
        if width >= 2 and width <= reach:
            trials.append((f"hat_w{width}", LatticeFunction.from_function(-width, width, lambda k, w=width: 1.0 - np.abs(k) / w)))
        if 4 * width <= reach:
            trials.append((f"gauss_s{width}", LatticeFunction.from_function(
                -4 * width, 4 * width, lambda k, s=width: np.exp(-np.square(k) / (2.0 * s * s)))))
        width *= 2
    return trials


def nash_ratio(env: Environment, trial_functions: Sequence[TrialFunction]) -> CheckRecord:
    """
    A_hat = max ||u||^6_{L2(pi)} / (E_2(u,u) ||u||^4_{L1(pi)}) over the trials with
    E_2(u,u) <= ||u||^2_{L1(pi)}; the others are excluded.
    """
    labels, ratios, excluded = [], [], []
    for label, u in trial_functions:
        mass = l1_pi(env, u)
        if mass == 0.0:
            raise ParameterError(f"zero_trial_function | label=<{label}>")
        energy = dirichlet_E2(env, u, u)
        if energy <= 0.0 or energy > mass * mass:
            excluded.append(label)
            continue
        labels.append(label)
        ratios.append(l2_pi(env, u) ** 6 / (energy * mass ** 4))
    if not ratios:
        raise EmptySampleError(f"no_admissible_trial_function | trials=<{len(trial_functions)}>")
    return _logged(CheckRecord(
        name="nash_ratio",
        category=CheckCategory.ESTIMATE,
        params={"trials": len(trial_functions)},
        statistics={"labels": labels, "ratios": np.asarray(ratios), "excluded": excluded},
        constants={"A_hat": float(np.max(ratios))},
    ))


def ultracontractivity_check(env: Environment, trial_functions: Sequence[TrialFunction]) -> CheckRecord:
    """||Pu||_{L-inf(pi)} <= 1/2 ||u||_{L1(pi)} for every trial"""
    lhs, rhs = [], []
    for _, u in trial_functions:
        sup_norm, half_mass = one_step_ultracontractivity(env, u)
        lhs.append(sup_norm)
        rhs.append(half_mass)
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    return _logged(CheckRecord(
        name="one_step_ultracontractivity",
        category=CheckCategory.LEMMA,
        params={"trials": len(trial_functions)},
        statistics={"sup_norm": lhs},
        bound={"half_l1_pi": rhs},
        violation=float(np.max(lhs - rhs)) if lhs.size else 0.0,
        slack=LEMMA_SLACK,
    ))


def _profile_values(b: LatticeFunction, n: int, xs: np.ndarray) -> np.ndarray:
    root = math.sqrt(n)
    sites = np.floor(root * xs).astype(np.int64)
    lo, hi = int(sites.min()), int(sites.max())
    return root * b.on_window(lo, hi)[sites - lo]


def equicontinuity_constant(
    env: Environment,
    N: int,
    trace: Optional[EvolutionTrace] = None,
    interval: Tuple[float, float] = (-2.0, 2.0),
    points: int = 41,
) -> CheckRecord:
    """
    C'_hat = max |f_n(y) - f_n(x)|^2 / ((y - x) + n^{-1/2}) over grid pairs x < y
    and n = 16, 32, ..., N, with f_n(x) = sqrt(n) b(n, floor(sqrt(n) x)).
    """
    if N < 16:
        raise ParameterError(f"invalid_horizon | N=<{N}> | expected N >= 16")
    ns = [1 << j for j in range(4, N.bit_length()) if (1 << j) <= N]
    trace = _trace_for(env, N + 1, trace, "equicontinuity_constant", keep=ns)
    xs = np.linspace(interval[0], interval[1], points)
    upper = np.triu_indices(points, k=1)
    gaps = (xs[:, None] - xs[None, :]).T[upper]

    per_n = []
    for n in ns:
        f = _profile_values(trace.b_snapshot(n), n, xs)
        jumps = np.square(f[:, None] - f[None, :]).T[upper]
        per_n.append(float(np.max(jumps / (gaps + 1.0 / math.sqrt(n)))))
    running = np.maximum.accumulate(per_n)

    if ns[-1] // 2 >= EQUICONTINUITY_BURN_IN:
        violation = float(running[-1] - EQUICONTINUITY_GROWTH * running[-2])
        note = f"C'(N) <= {EQUICONTINUITY_GROWTH} C'(N/2)"
    else:
        violation = 0.0
        note = "burn-in not reached; stabilization not tested"
    return _logged(CheckRecord(
        name="equicontinuity_constant",
        category=CheckCategory.STABILIZATION,
        params={"N": N, "interval": list(interval), "points": points},
        statistics={"n": np.asarray(ns), "per_n": np.asarray(per_n)},
        bound={"growth_factor": EQUICONTINUITY_GROWTH},
        violation=violation,
        constants={"C_prime_hat": float(running[-1])},
        note=note,
    ))


def continuous_gradient_check(env: Environment, ts: Sequence[float], tol: float = 1e-12) -> CheckRecord:
    """
    On an increasing grid of times: t -> ||grad a(t,.)||^2 is non-increasing and
    t ||grad a(t,.)||^2 <= pi_0 a(t,0).
    """
    ts = [float(t) for t in ts]
    if len(ts) < 2 or any(t <= 0.0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ParameterError("invalid_time_grid | expected at least two increasing positive times")
    snapshots = poissonized_many(env, ts, tol)
    energy = np.asarray([float(np.sum(np.square(gradient(s.f).values))) for s in snapshots])
    times = np.asarray(ts)
    bound = env.pi_weight(0) * np.asarray([s.value_at(0) for s in snapshots])
    violation = max(float(np.max(np.diff(energy))), float(np.max(times * energy - bound)))
    return _logged(CheckRecord(
        name="continuous_gradient_check",
        category=CheckCategory.LEMMA,
        params={"ts": ts, "tol": tol},
        statistics={"energy": energy, "t_energy": times * energy},
        bound={"pi0_a_t_0": bound},
        violation=violation,
        slack=LEMMA_SLACK,
    ))
