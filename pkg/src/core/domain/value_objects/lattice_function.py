from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
import pandas as pd

from core.domain.exceptions import ParameterError


@dataclass(frozen=True)
class LatticeFunction:
    """
    Real-valued function on the integer window [lo, hi], implicitly zero outside.

    Values are stored as a read-only float64 array; every operation returns a
    new instance.
    """
    lo: int
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 1 or values.size == 0:
            raise ParameterError("lattice_function_invalid | values must be a nonempty 1-d array")
        if not np.all(np.isfinite(values)):
            raise ParameterError(f"lattice_function_invalid | lo=<{self.lo}> | values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "lo", int(self.lo))
        object.__setattr__(self, "values", values)

    @classmethod
    def indicator(cls, site: int = 0) -> "LatticeFunction":
        """The point mass 1_{site}"""
        return cls(lo=site, values=np.ones(1))

    @classmethod
    def from_function(cls, lo: int, hi: int, func: Callable[[np.ndarray], np.ndarray]) -> "LatticeFunction":
        """Tabulate a vectorized function on the sites lo..hi"""
        return cls(lo=lo, values=func(np.arange(lo, hi + 1)))

    @property
    def hi(self) -> int:
        return self.lo + self.values.size - 1

    @property
    def window(self) -> Tuple[int, int]:
        return self.lo, self.hi

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def __len__(self) -> int:
        return self.values.size

    def value_at(self, site: int) -> float:
        """Value at a site, zero outside the window"""
        if self.lo <= site <= self.hi:
            return float(self.values[site - self.lo])
        return 0.0

    def on_window(self, lo: int, hi: int) -> np.ndarray:
        """Values on [lo, hi] as a fresh array, zero-padded where the window does not reach"""
        out = np.zeros(hi - lo + 1)
        start, stop = max(lo, self.lo), min(hi, self.hi)
        if start <= stop:
            out[start - lo:stop - lo + 1] = self.values[start - self.lo:stop - self.lo + 1]
        return out

    def extended(self, lo: int, hi: int) -> "LatticeFunction":
        """Same function represented on [lo, hi] (which must contain the current window)"""
        return LatticeFunction(lo=lo, values=self.on_window(lo, hi))

    def shifted(self, offset: int) -> "LatticeFunction":
        """Lattice translation k -> k + offset"""
        return LatticeFunction(lo=self.lo + offset, values=self.values)

    def scaled(self, factor: float) -> "LatticeFunction":
        return LatticeFunction(lo=self.lo, values=factor * self.values)

    def total(self) -> float:
        return float(np.sum(self.values))

    def compacted(self, threshold: float = 1e-300) -> "LatticeFunction":
        """Trim edge values with magnitude below threshold (explicit request only)"""
        keep = np.flatnonzero(np.abs(self.values) >= threshold)
        if keep.size == 0:
            return LatticeFunction(lo=self.lo, values=np.zeros(1))
        return LatticeFunction(lo=self.lo + int(keep[0]), values=self.values[keep[0]:keep[-1] + 1])

    def _combine(self, other: "LatticeFunction", op) -> "LatticeFunction":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return LatticeFunction(lo=lo, values=op(self.on_window(lo, hi), other.on_window(lo, hi)))

    def __add__(self, other: "LatticeFunction") -> "LatticeFunction":
        return self._combine(other, np.add)

    def __sub__(self, other: "LatticeFunction") -> "LatticeFunction":
        return self._combine(other, np.subtract)

    def __mul__(self, factor: float) -> "LatticeFunction":
        return self.scaled(factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return self.lo == other.lo and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.lo, self.values.tobytes()))

    def to_frame(self) -> pd.DataFrame:
        """Rows (k, value) for CSV export"""
        return pd.DataFrame({"k": self.sites, "value": self.values})
