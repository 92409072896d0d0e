"""
Seeded Monte Carlo simulation of walk endpoints, used to cross-check exact evolution.

Samples are drawn in fixed-size chunks, each with its own PCG64 stream derived from
SeedSequence([seed, chunk]). The sample array therefore depends only on
(env, n, count, seed) and not on the number of worker threads.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.stats import norm

from core.domain.entities.environment import Environment
from core.domain.entities.kernel_snapshot import KernelKind, KernelSnapshot
from core.domain.exceptions import ParameterError, UsageError
from core.domain.value_objects.lattice_function import LatticeFunction
from infrastructure.logging import get_logger

logger = get_logger(__name__)

CHUNK_SIZE = 1 << 16


def _simulate_chunk(omegas: np.ndarray, offset: int, n: int, size: int, seed: int, chunk: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, chunk])))
    positions = np.zeros(size, dtype=np.int64)
    for _ in range(n):
        u = rng.random(size)
        w = omegas[positions - offset]
        # [0, w) left, [w, 2w) right, [2w, 1) hold
        positions += np.where(u < w, -1, np.where(u < 2.0 * w, 1, 0))
    return positions


def sample_endpoints(
    env: Environment,
    n: int,
    count: int,
    seed: int,
    jobs: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> np.ndarray:
    """count independent values of X_n started at 0"""
    if count < 1:
        raise ParameterError(f"invalid_sample_count | count=<{count}> | expected >= 1")
    if n < 0:
        raise ParameterError(f"invalid_horizon | n=<{n}> | expected n >= 0")
    if seed is None:
        raise ParameterError("seed_required | operation=<sample_endpoints>")
    env.require_window(-n, n, "sample_endpoints")

    sizes = [min(chunk_size, count - start) for start in range(0, count, chunk_size)]
    logger.info(f"monte_carlo_started | n=<{n}> | count=<{count}> | chunks=<{len(sizes)}>", seed=seed, jobs=jobs)

    def run(chunk: int) -> np.ndarray:
        return _simulate_chunk(env.omegas, env.lo, n, sizes[chunk], seed, chunk)

    if jobs <= 1:
        parts = [run(chunk) for chunk in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    return np.concatenate(parts)


def empirical_pmf(samples: np.ndarray) -> LatticeFunction:
    """Relative frequencies per site"""
    samples = np.asarray(samples, dtype=np.int64)
    if samples.size == 0:
        raise ParameterError("empty_sample | operation=<empirical_pmf>")
    lo = int(samples.min())
    counts = np.bincount(samples - lo)
    return LatticeFunction(lo=lo, values=counts / samples.size)


def total_variation(samples: np.ndarray, snapshot: KernelSnapshot) -> float:
    """Total-variation distance between the per-site histogram and a forward pmf"""
    if snapshot.kind is not KernelKind.FORWARD:
        raise UsageError(f"kind_mismatch | kind=<{snapshot.kind.value}> | expected forward")
    difference = empirical_pmf(samples) - snapshot.f
    return 0.5 * float(np.sum(np.abs(difference.values)))


def kolmogorov_distance(samples: np.ndarray, n: int, sigma2: float) -> float:
    """
    sup_k |F_emp(k) - Phi((k + 1/2) / sqrt(n sigma2))| for X_n / sqrt(n) against Normal(0, sigma2).

    The half-site shift is the usual continuity correction for a lattice variable.
    """
    if n < 1:
        raise UsageError(f"degenerate_scaling | n=<{n}> | expected n >= 1")
    if not sigma2 > 0.0:
        raise ParameterError(f"invalid_variance | sigma2=<{sigma2}> | expected > 0")
    pmf = empirical_pmf(samples)
    cdf = np.cumsum(pmf.values)
    reference = norm.cdf((pmf.sites + 0.5) / math.sqrt(n * sigma2))
    return float(np.max(np.abs(cdf - reference)))


def sample_moments(samples: np.ndarray) -> tuple:
    """Empirical mean, variance and the standard error of the mean"""
    samples = np.asarray(samples, dtype=np.float64)
    mean = float(np.mean(samples))
    variance = float(np.var(samples))
    return mean, variance, math.sqrt(variance / samples.size)


def default_seed(env: Environment, fallback: Optional[int]) -> int:
    """Sampling seed: explicit fallback first, else the environment's own seed, else 0"""
    if fallback is not None:
        return fallback
    return env.seed if env.seed is not None else 0
