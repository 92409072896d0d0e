from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional

import numpy as np

from core.domain.entities.environment import Environment
from core.domain.exceptions import ParameterError, UsageError
from core.domain.services.kernel_evolution import iter_reversed_a
from core.domain.services.markov_operator import gradient
from core.domain.value_objects.lattice_function import LatticeFunction
from infrastructure.logging import get_logger

logger = get_logger(__name__)


@dataclass
class EvolutionTrace:
    """
    Scalar sequences recorded along one pass of a(n,.) for n = 0..horizon.

    grad_b and b_snapshots stop at horizon - 1, since b(n,.) needs a(n+1,.).
    """
    env_fingerprint: str
    horizon: int
    grad_a: np.ndarray
    grad_b: np.ndarray
    a_origin: np.ndarray
    pmf_max: np.ndarray
    a_snapshots: Dict[int, LatticeFunction] = field(default_factory=dict)
    b_snapshots: Dict[int, LatticeFunction] = field(default_factory=dict)

    def require(self, horizon: int, purpose: str) -> None:
        if horizon > self.horizon:
            raise UsageError(f"trace_too_short | purpose=<{purpose}> | required=<{horizon}> | available=<{self.horizon}>")

    def b_snapshot(self, n: int) -> LatticeFunction:
        if n not in self.b_snapshots:
            raise UsageError(f"snapshot_not_kept | kind=<reversed_b> | n=<{n}>")
        return self.b_snapshots[n]

    def return_increments(self, horizon: Optional[int] = None) -> np.ndarray:
        """d(m) = a(2m+2,0) - a(2m+1,0) for every m with 2m+2 <= horizon"""
        horizon = self.horizon if horizon is None else min(horizon, self.horizon)
        count = max((horizon - 2) // 2 + 1, 0)
        m = np.arange(count)
        return self.a_origin[2 * m + 2] - self.a_origin[2 * m + 1]


def _squared_gradient(f: LatticeFunction) -> float:
    return float(np.sum(np.square(gradient(f).values)))


def collect_trace(env: Environment, horizon: int, keep: Iterable[int] = ()) -> EvolutionTrace:
    """Stream a(n,.) once and record everything the discrete diagnostics need"""
    if horizon < 0:
        raise ParameterError(f"invalid_horizon | n=<{horizon}> | expected n >= 0")
    keep = set(keep)
    grad_a = np.zeros(horizon + 1)
    grad_b = np.zeros(max(horizon, 0))
    a_origin = np.zeros(horizon + 1)
    pmf_max = np.zeros(horizon + 1)
    a_snapshots: Dict[int, LatticeFunction] = {}
    b_snapshots: Dict[int, LatticeFunction] = {}
    omega_0 = env.omega(0)

    previous = None
    for n, a in iter_reversed_a(env, horizon):
        grad_a[n] = _squared_gradient(a)
        a_origin[n] = a.value_at(0)
        # (P^n)_{0,k} = omega_0 a(n,k) / omega_k
        pmf_max[n] = omega_0 * float(np.max(a.values / env.omega_slice(a.lo, a.hi)))
        if n in keep:
            a_snapshots[n] = a
        if previous is not None:
            b = (a + previous).scaled(0.5)
            grad_b[n - 1] = _squared_gradient(b)
            if n - 1 in keep:
                b_snapshots[n - 1] = b
        previous = a

    logger.debug(f"trace_collected | horizon=<{horizon}>", kept=len(a_snapshots), fingerprint=env.fingerprint)
    return EvolutionTrace(
        env_fingerprint=env.fingerprint,
        horizon=horizon,
        grad_a=grad_a,
        grad_b=grad_b,
        a_origin=a_origin,
        pmf_max=pmf_max,
        a_snapshots=a_snapshots,
        b_snapshots=b_snapshots,
    )
