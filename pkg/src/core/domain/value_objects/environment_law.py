from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core.domain.exceptions import OmegaDomainError, ParameterError

OMEGA_MAX = 0.5
PROBABILITY_SUM_TOLERANCE = 1e-12


def check_omega(value: float, site: Optional[int] = None) -> None:
    """Reject values outside the open-closed interval (0, 1/2]"""
    if not (0.0 < value <= OMEGA_MAX):
        where = f" | site=<{site}>" if site is not None else ""
        raise OmegaDomainError(f"omega_out_of_range | value=<{value!r}>{where} | expected (0, 1/2]", site, value)


def _format_real(value: float) -> str:
    return repr(float(value))


class EnvironmentLaw(ABC):
    """Value object describing how the diffusivities of an environment are produced"""

    @property
    @abstractmethod
    def is_stochastic(self) -> bool:
        """Whether generation consumes random numbers (and therefore a seed)"""

    @abstractmethod
    def validate(self) -> None:
        """Validate law parameters"""

    @abstractmethod
    def fill(self, lo: int, hi: int, rng: Optional[np.random.Generator]) -> np.ndarray:
        """Produce omegas for sites lo..hi"""

    @abstractmethod
    def describe(self) -> str:
        """Tagged one-line description, parseable by parse_law"""

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class ConstantLaw(EnvironmentLaw):
    """Homogeneous environment, every site carries the same omega"""
    omega: float

    @property
    def is_stochastic(self) -> bool:
        return False

    def validate(self) -> None:
        try:
            check_omega(self.omega)
        except OmegaDomainError as e:
            raise ParameterError(f"invalid_constant_law | {e}")

    def fill(self, lo: int, hi: int, rng: Optional[np.random.Generator]) -> np.ndarray:
        return np.full(hi - lo + 1, float(self.omega))

    def describe(self) -> str:
        return f"constant:{_format_real(self.omega)}"


@dataclass(frozen=True)
class UniformLaw(EnvironmentLaw):
    """I.i.d. omegas uniform on the half-open interval (a, b]"""
    a: float
    b: float

    @property
    def is_stochastic(self) -> bool:
        return True

    def validate(self) -> None:
        if not (0.0 < self.a <= self.b <= OMEGA_MAX):
            raise ParameterError(f"invalid_uniform_law | a=<{self.a}> | b=<{self.b}> | expected 0 < a <= b <= 1/2")

    def fill(self, lo: int, hi: int, rng: Optional[np.random.Generator]) -> np.ndarray:
        draws = rng.random(hi - lo + 1)
        # b - (b - a) * U maps [0, 1) onto (a, b]
        return self.b - (self.b - self.a) * draws

    def describe(self) -> str:
        return f"uniform:{_format_real(self.a)},{_format_real(self.b)}"


@dataclass(frozen=True)
class DiscreteLaw(EnvironmentLaw):
    """I.i.d. omegas drawn from a finite set of values"""
    values: Tuple[float, ...]
    probs: Tuple[float, ...]

    @property
    def is_stochastic(self) -> bool:
        return True

    def validate(self) -> None:
        if not self.values or len(self.values) != len(self.probs):
            raise ParameterError("invalid_discrete_law | values and probs must be nonempty and of equal length")
        for value in self.values:
            if not (0.0 < value <= OMEGA_MAX):
                raise ParameterError(f"invalid_discrete_law | value=<{value}> | expected (0, 1/2]")
        if any(p < 0.0 for p in self.probs):
            raise ParameterError("invalid_discrete_law | probabilities must be nonnegative")
        total = float(np.sum(self.probs))
        if abs(total - 1.0) > PROBABILITY_SUM_TOLERANCE:
            raise ParameterError(f"invalid_discrete_law | probability_sum=<{total!r}> | expected 1")

    def fill(self, lo: int, hi: int, rng: Optional[np.random.Generator]) -> np.ndarray:
        cumulative = np.cumsum(self.probs)
        draws = rng.random(hi - lo + 1)
        index = np.searchsorted(cumulative, draws, side="right")
        index = np.minimum(index, len(self.values) - 1)
        return np.asarray(self.values, dtype=np.float64)[index]

    def describe(self) -> str:
        values = ",".join(_format_real(v) for v in self.values)
        probs = ",".join(_format_real(p) for p in self.probs)
        return f"discrete:{values};{probs}"


@dataclass(frozen=True)
class PeriodicLaw(EnvironmentLaw):
    """Deterministic tiling of a pattern, pattern index 0 anchored at site 0"""
    pattern: Tuple[float, ...]

    @property
    def is_stochastic(self) -> bool:
        return False

    def validate(self) -> None:
        if not self.pattern:
            raise ParameterError("invalid_periodic_law | empty pattern")
        for value in self.pattern:
            if not (0.0 < value <= OMEGA_MAX):
                raise ParameterError(f"invalid_periodic_law | value=<{value}> | expected (0, 1/2]")

    def fill(self, lo: int, hi: int, rng: Optional[np.random.Generator]) -> np.ndarray:
        sites = np.arange(lo, hi + 1)
        # numpy's remainder is nonnegative for a positive modulus, also for negative sites
        return np.asarray(self.pattern, dtype=np.float64)[np.mod(sites, len(self.pattern))]

    def describe(self) -> str:
        return "periodic:" + ",".join(_format_real(v) for v in self.pattern)


def _parse_reals(text: str, tag: str) -> Tuple[float, ...]:
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise ParameterError(f"invalid_law_parameters | law=<{tag}> | parameters=<{text}>")


def parse_law(text: str) -> EnvironmentLaw:
    """
    Parse a tagged law description.

    Accepted forms: ``constant:w``, ``uniform:a,b``, ``discrete:v1,v2;p1,p2``
    and ``periodic:w1,w2,...``. The parsed law is validated before it is returned.
    """
    tag, sep, params = text.strip().partition(":")
    if not sep:
        raise ParameterError(f"invalid_law | law=<{text}> | expected '<kind>:<parameters>'")
    tag = tag.strip().lower()

    if tag == "constant":
        values = _parse_reals(params, tag)
        if len(values) != 1:
            raise ParameterError("invalid_constant_law | expected exactly one value")
        law: EnvironmentLaw = ConstantLaw(values[0])
    elif tag == "uniform":
        values = _parse_reals(params, tag)
        if len(values) != 2:
            raise ParameterError("invalid_uniform_law | expected two bounds a,b")
        law = UniformLaw(values[0], values[1])
    elif tag == "discrete":
        head, sep, tail = params.partition(";")
        if not sep:
            raise ParameterError("invalid_discrete_law | expected 'values;probs'")
        law = DiscreteLaw(_parse_reals(head, tag), _parse_reals(tail, tag))
    elif tag == "periodic":
        law = PeriodicLaw(_parse_reals(params, tag))
    else:
        raise ParameterError(f"unknown_law | law=<{tag}>")

    law.validate()
    return law
