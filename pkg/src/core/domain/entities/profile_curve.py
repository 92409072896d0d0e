from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
import pandas as pd

from core.domain.exceptions import ParameterError


class ProfileVariant(Enum):
    F_B = "f_b"                    # sqrt(n) b(n, floor(sqrt(n) x))
    F_A = "f_a"                    # sqrt(n) a(n, floor(sqrt(n) x))
    F_T = "f_t"                    # sqrt(t) a(t, floor(sqrt(t) x)), continuous time
    PMF = "pmf"                    # sqrt(n) P(X_n = floor(sqrt(n) x)), unmodulated
    MODULATED_G = "modulated_g"    # omega sqrt(n) g_n
    MODULATED_A = "modulated_a"    # omega sqrt(n) P(X_n = .)
    CONTINUOUS = "continuous"      # omega sqrt(t) P(Y_t = .)


@dataclass(frozen=True)
class ProfileCurve:
    """A scaled kernel sampled at one point per lattice cell, x = k / sqrt(n)"""
    xs: np.ndarray
    values: np.ndarray
    time: Union[int, float]
    variant: ProfileVariant

    def __post_init__(self):
        xs = np.array(self.xs, dtype=np.float64, copy=True)
        values = np.array(self.values, dtype=np.float64, copy=True)
        if xs.shape != values.shape or xs.ndim != 1:
            raise ParameterError("profile_invalid | xs and values must be 1-d arrays of equal length")
        if xs.size > 1 and not np.all(np.diff(xs) > 0.0):
            raise ParameterError("profile_invalid | xs must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ParameterError("profile_invalid | values must be finite")
        xs.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.xs.size

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x": self.xs, "value": self.values})
