"""
Exact evolution of the forward pmf (P^n)_{0,.} and the reversed kernels a(n,.), b(n,.).

Streams yield (n, LatticeFunction) pairs without retaining history, so a pass to
horizon N needs O(N) memory. Two independent update rules produce a(n,.): repeated
application of P, and the explicit heat step a <- a + omega * Delta a.
"""

from typing import Iterator, Tuple

import numpy as np

from core.domain.entities.environment import Environment
from core.domain.entities.kernel_snapshot import KernelKind, KernelSnapshot
from core.domain.exceptions import ParameterError, UsageError
from core.domain.services.markov_operator import apply_P, apply_P_adjoint, laplacian
from core.domain.value_objects.lattice_function import LatticeFunction
from infrastructure.logging import get_logger, log_evolution_progress

logger = get_logger(__name__)


def _check_horizon(env: Environment, horizon: int, purpose: str) -> None:
    if horizon < 0:
        raise ParameterError(f"invalid_horizon | n=<{horizon}> | expected n >= 0")
    env.require_horizon(horizon, purpose)


def _is_checkpoint(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def iter_forward(env: Environment, horizon: int) -> Iterator[Tuple[int, LatticeFunction]]:
    """Yield (n, (P^n)_{0,.}) for n = 0..horizon"""
    _check_horizon(env, horizon, "forward evolution")
    p = LatticeFunction.indicator(0)
    yield 0, p
    for n in range(1, horizon + 1):
        p = apply_P_adjoint(env, p)
        if _is_checkpoint(n):
            logger.debug(f"evolution_checkpoint | kind=<forward> | n=<{n}>", **log_evolution_progress("forward", n, horizon, mass=p.total()))
        yield n, p


def iter_reversed_a(env: Environment, horizon: int) -> Iterator[Tuple[int, LatticeFunction]]:
    """Yield (n, a(n,.)) for n = 0..horizon, with a(n,.) = P^n 1_{0}"""
    _check_horizon(env, horizon, "reversed evolution")
    a = LatticeFunction.indicator(0)
    yield 0, a
    for n in range(1, horizon + 1):
        a = apply_P(env, a)
        if _is_checkpoint(n):
            logger.debug(f"evolution_checkpoint | kind=<reversed_a> | n=<{n}>", **log_evolution_progress("reversed_a", n, horizon))
        yield n, a


def iter_reversed_a_heatstep(env: Environment, horizon: int) -> Iterator[Tuple[int, LatticeFunction]]:
    """Yield (n, a(n,.)) computed by the explicit heat update a(n+1) = a(n) + omega * Delta a(n)"""
    _check_horizon(env, horizon, "heat-step evolution")
    a = LatticeFunction.indicator(0)
    yield 0, a
    for n in range(1, horizon + 1):
        lap = laplacian(a)
        current = a.on_window(lap.lo, lap.hi)
        a = LatticeFunction(lo=lap.lo, values=current + env.omega_slice(lap.lo, lap.hi) * lap.values)
        yield n, a


def iter_reversed_b(env: Environment, horizon: int) -> Iterator[Tuple[int, LatticeFunction]]:
    """Yield (n, b(n,.)) for n = 0..horizon, where b(n,.) = (a(n+1,.) + a(n,.)) / 2"""
    _check_horizon(env, horizon + 1, "reversed_b evolution")
    stream = iter_reversed_a(env, horizon + 1)
    _, previous = next(stream)
    for n, a in stream:
        yield n - 1, (a + previous).scaled(0.5)
        previous = a


def _last(stream: Iterator[Tuple[int, LatticeFunction]]) -> LatticeFunction:
    f = None
    for _, f in stream:
        pass
    return f


def forward_pmf(env: Environment, n: int) -> KernelSnapshot:
    """P(X_n = k | X_0 = 0) as a snapshot"""
    return KernelSnapshot(KernelKind.FORWARD, n, _last(iter_forward(env, n)), env.fingerprint)


def reversed_a(env: Environment, n: int) -> KernelSnapshot:
    """a(n,k) = (P^n)_{k,0}"""
    return KernelSnapshot(KernelKind.REVERSED_A, n, _last(iter_reversed_a(env, n)), env.fingerprint)


def reversed_a_heatstep(env: Environment, n: int) -> KernelSnapshot:
    """a(n,.) by the heat-equation update, an independent code path to reversed_a"""
    return KernelSnapshot(KernelKind.REVERSED_A, n, _last(iter_reversed_a_heatstep(env, n)), env.fingerprint)


def reversed_b(env: Environment, n: int) -> KernelSnapshot:
    """b(n,.) = (a(n+1,.) + a(n,.)) / 2"""
    return KernelSnapshot(KernelKind.REVERSED_B, n, _last(iter_reversed_b(env, n)), env.fingerprint)


def pmf_mean_variance(snapshot: KernelSnapshot) -> Tuple[float, float]:
    """Mean and variance of a forward pmf"""
    if snapshot.kind is not KernelKind.FORWARD:
        raise UsageError(f"kind_mismatch | kind=<{snapshot.kind.value}> | expected forward")
    sites = snapshot.f.sites.astype(np.float64)
    p = snapshot.f.values
    mean = float(np.sum(sites * p))
    second = float(np.sum(np.square(sites) * p))
    return mean, second - mean * mean
