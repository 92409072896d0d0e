import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from core.domain.exceptions import ParameterError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class GaussianRef:
    """Limit parameters of the local limit theorem: variance sigma2 and environment constant mu"""
    sigma2: float
    mu: float

    def __post_init__(self):
        if not (self.sigma2 > 0.0 and math.isfinite(self.sigma2)):
            raise ParameterError(f"invalid_gaussian_ref | sigma2=<{self.sigma2}> | expected > 0")
        if not (self.mu > 0.0 and math.isfinite(self.mu)):
            raise ParameterError(f"invalid_gaussian_ref | mu=<{self.mu}> | expected > 0")

    @classmethod
    def from_mu(cls, mu: float) -> "GaussianRef":
        """Reference tied to the environment constant through sigma2 * mu = 2"""
        return cls(sigma2=2.0 / mu, mu=mu)

    def density(self, x: ArrayLike) -> ArrayLike:
        """Centered normal density with variance sigma2"""
        return np.exp(-np.square(x) / (2.0 * self.sigma2)) / math.sqrt(2.0 * math.pi * self.sigma2)

    def target(self, x: ArrayLike) -> ArrayLike:
        """Limit of the modulated profile, phi(x) / mu"""
        return self.density(x) / self.mu

    @property
    def peak(self) -> float:
        return 1.0 / math.sqrt(2.0 * math.pi * self.sigma2)

    def to_dict(self) -> dict:
        return {"sigma2": self.sigma2, "mu": self.mu}
