import hashlib
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from core.domain.exceptions import ParameterError, WindowError
from core.domain.value_objects.environment_law import EnvironmentLaw, check_omega

GENERATOR_NAME = "PCG64"


@dataclass(frozen=True)
class Environment:
    """
    Domain entity representing a quenched balanced environment on a finite window.

    Site k carries the triplet (omega_k, 1 - 2 omega_k, omega_k). The entity is
    immutable after construction and safe to share across workers.
    """
    lo: int
    omegas: np.ndarray
    law: EnvironmentLaw
    seed: Optional[int] = None
    _fingerprint: str = field(default="", init=False, repr=False, compare=False)

    def __post_init__(self):
        omegas = np.array(self.omegas, dtype=np.float64, copy=True)
        if omegas.ndim != 1 or omegas.size == 0:
            raise ParameterError("environment_invalid | omegas must be a nonempty 1-d array")
        bad = np.flatnonzero(~((omegas > 0.0) & (omegas <= 0.5)))
        if bad.size:
            index = int(bad[0])
            check_omega(float(omegas[index]), site=int(self.lo) + index)
        if self.seed is not None and not (0 <= int(self.seed) < 2**64):
            raise ParameterError(f"environment_invalid | seed=<{self.seed}> | expected unsigned 64-bit integer")
        omegas.setflags(write=False)
        object.__setattr__(self, "lo", int(self.lo))
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "_fingerprint", self._compute_fingerprint())

    @classmethod
    def generate(cls, law: EnvironmentLaw, window: Tuple[int, int], seed: Optional[int] = None) -> "Environment":
        """Instantiate an environment; deterministic given (law, window, seed)"""
        lo, hi = window
        if hi < lo:
            raise ParameterError(f"empty_window | lo=<{lo}> | hi=<{hi}>")
        law.validate()
        rng = None
        if law.is_stochastic:
            if seed is None:
                raise ParameterError(f"seed_required | law=<{law.describe()}>")
            rng = np.random.Generator(np.random.PCG64(seed))
        else:
            seed = None
        return cls(lo=lo, omegas=law.fill(lo, hi, rng), law=law, seed=seed)

    @property
    def hi(self) -> int:
        return self.lo + self.omegas.size - 1

    @property
    def window(self) -> Tuple[int, int]:
        return self.lo, self.hi

    @property
    def fingerprint(self) -> str:
        return self._fingerprint

    @property
    def generator(self) -> Optional[str]:
        return GENERATOR_NAME if self.seed is not None else None

    def covers(self, lo: int, hi: int) -> bool:
        return self.lo <= lo and hi <= self.hi

    def require_window(self, lo: int, hi: int, purpose: str = "operation") -> None:
        if not self.covers(lo, hi):
            raise WindowError(f"environment_window_too_small | purpose=<{purpose}>", (lo, hi), self.window)

    def require_horizon(self, horizon: int, purpose: str = "evolution") -> None:
        """Evolution to horizon N needs omegas on [-N-1, N+1]"""
        self.require_window(-horizon - 1, horizon + 1, purpose)

    def omega_slice(self, lo: int, hi: int) -> np.ndarray:
        """Omegas for the sites lo..hi (read-only view)"""
        self.require_window(lo, hi)
        return self.omegas[lo - self.lo:hi - self.lo + 1]

    def pi_slice(self, lo: int, hi: int) -> np.ndarray:
        """Reversible weights pi_k = 1 / omega_k for the sites lo..hi"""
        return 1.0 / self.omega_slice(lo, hi)

    def omega(self, k: int) -> float:
        self.require_window(k, k, "site lookup")
        return float(self.omegas[k - self.lo])

    def transition_triplet(self, k: int) -> Tuple[float, float, float]:
        """(q_k, r_k, p_k) = (omega_k, 1 - 2 omega_k, omega_k)"""
        w = self.omega(k)
        return w, 1.0 - 2.0 * w, w

    def pi_weight(self, k: int) -> float:
        return 1.0 / self.omega(k)

    def average_inverse_omega(self, x: float, y: float, scale: float) -> float:
        """
        Exact mean of 1/omega_{floor(T xi)} over xi in [x, y].

        The interval is cut into the cells [k/T, (k+1)/T) on which the integrand
        is constant, so the result carries rounding error only.
        """
        if not x < y:
            raise ParameterError(f"invalid_interval | x=<{x}> | y=<{y}> | expected x < y")
        if not scale > 0.0:
            raise ParameterError(f"invalid_scale | T=<{scale}> | expected T > 0")
        first, last = math.floor(scale * x), math.floor(scale * y)
        self.require_window(first, last, "average_inverse_omega")
        cells = np.arange(first, last + 1)
        left = np.maximum(cells / scale, x)
        right = np.minimum((cells + 1) / scale, y)
        lengths = np.clip(right - left, 0.0, None)
        return float(np.sum(lengths * self.pi_slice(first, last)) / (y - x))

    def is_lazy(self) -> bool:
        """omega_k <= 1/4 everywhere, so P has nonnegative spectrum"""
        return bool(np.all(self.omegas <= 0.25))

    def ellipticity(self) -> float:
        return float(np.min(self.omegas))

    def _compute_fingerprint(self) -> str:
        digest = hashlib.sha256()
        digest.update(self.law.describe().encode())
        digest.update(str(self.seed).encode())
        digest.update(str(self.lo).encode())
        digest.update(self.omegas.tobytes())
        return digest.hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Environment):
            return NotImplemented
        return (
            self.lo == other.lo
            and self.law == other.law
            and self.seed == other.seed
            and np.array_equal(self.omegas, other.omegas)
        )

    def __hash__(self) -> int:
        return hash(self._fingerprint)

    def describe(self) -> dict:
        """Provenance for artifact headers"""
        return {
            "law": self.law.describe(),
            "seed": self.seed,
            "generator": self.generator,
            "window": [self.lo, self.hi],
            "fingerprint": self.fingerprint,
        }
