"""
Continuous-time kernel by uniformization: a(t,.) = e^{-t} sum_n t^n/n! a(n,.).

The series is truncated at the smallest order N whose Poisson(t) tail mass lies
below tol. Since every a(n,.) is bounded by 1, the truncation error is at most
tol in the sup norm.
"""

import math
from typing import List, Sequence

import numpy as np
from scipy.stats import poisson

from core.domain.entities.environment import Environment
from core.domain.entities.kernel_snapshot import KernelKind, KernelSnapshot
from core.domain.exceptions import ParameterError
from core.domain.services.kernel_evolution import iter_reversed_a
from core.domain.value_objects.lattice_function import LatticeFunction
from infrastructure.logging import get_logger

logger = get_logger(__name__)

MAX_TOLERANCE = 1e-6


def _validate(t: float, tol: float) -> None:
    if not (0.0 < tol <= MAX_TOLERANCE):
        raise ParameterError(f"tolerance_out_of_range | tol=<{tol!r}> | expected (0, {MAX_TOLERANCE}]")
    if not (math.isfinite(t) and t >= 0.0):
        raise ParameterError(f"invalid_time | t=<{t!r}> | expected finite t >= 0")


def truncation_order(t: float, tol: float) -> int:
    """Smallest N with P(Poisson(t) > N) < tol"""
    _validate(t, tol)
    if t == 0.0:
        return 0
    order = max(int(poisson.isf(tol, t)), 0)
    while poisson.sf(order, t) >= tol:
        order += 1
    while order > 0 and poisson.sf(order - 1, t) < tol:
        order -= 1
    return order


def poisson_weights(t: float, order: int) -> np.ndarray:
    """e^{-t} t^n / n! for n = 0..order"""
    return poisson.pmf(np.arange(order + 1), t)


def poissonized_many(env: Environment, ts: Sequence[float], tol: float) -> List[KernelSnapshot]:
    """Poissonized snapshots for several times from a single pass over a(n,.)"""
    if len(ts) == 0:
        return []
    orders = [truncation_order(float(t), tol) for t in ts]
    horizon = max(orders)
    env.require_horizon(horizon, "poissonization")

    weights = [poisson_weights(float(t), order) for t, order in zip(ts, orders)]
    sums = [np.zeros(2 * order + 1) for order in orders]

    for n, a in iter_reversed_a(env, horizon):
        for index, order in enumerate(orders):
            if n > order:
                continue
            start = a.lo + order
            sums[index][start:start + len(a)] += weights[index][n] * a.values

    logger.debug(f"poissonized | times=<{len(ts)}> | horizon=<{horizon}>", tol=tol)
    return [
        KernelSnapshot(
            kind=KernelKind.POISSONIZED,
            time=float(t),
            f=LatticeFunction(lo=-order, values=total),
            env_fingerprint=env.fingerprint,
            tolerance=tol,
            truncation_order=order,
        )
        for t, order, total in zip(ts, orders, sums)
    ]


def poissonized(env: Environment, t: float, tol: float) -> KernelSnapshot:
    """The continuous-time reversed kernel a(t,.) at one time"""
    return poissonized_many(env, [t], tol)[0]
