from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from core.domain.entities.environment import GENERATOR_NAME, Environment
from core.domain.services.kernel_evolution import forward_pmf, pmf_mean_variance
from core.domain.services.monte_carlo import (
    empirical_pmf,
    kolmogorov_distance,
    sample_endpoints,
    sample_moments,
    total_variation,
)
from core.ports.outbound.artifact_writer_port import ArtifactWriterPort
from infrastructure.logging import get_logger

logger = get_logger(__name__)


class MonteCarloCrossCheckUseCase:
    """Use case comparing simulated endpoints with the exact forward pmf"""

    def __init__(self, artifact_writer: ArtifactWriterPort):
        self._artifact_writer = artifact_writer

    def execute(
        self,
        env: Environment,
        n: int,
        count: int,
        seed: int,
        jobs: int = 1,
        out: Optional[Path] = None,
        header: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """Total-variation and Kolmogorov distances plus moments; optionally writes histogram and summary"""
        samples = sample_endpoints(env, n, count, seed, jobs)
        exact = forward_pmf(env, n)
        exact_mean, exact_variance = pmf_mean_variance(exact)
        mean, variance, standard_error = sample_moments(samples)
        sigma2 = exact_variance / n if n > 0 else 0.0

        summary = {
            "n": n,
            "count": count,
            "sampling_seed": seed,
            "generator": GENERATOR_NAME,
            "total_variation": total_variation(samples, exact),
            "kolmogorov": kolmogorov_distance(samples, n, sigma2) if n > 0 else 0.0,
            "sample_mean": mean,
            "sample_variance": variance,
            "mean_standard_error": standard_error,
            "exact_mean": exact_mean,
            "exact_variance": exact_variance,
            "sigma2": sigma2,
        }
        logger.info(f"monte_carlo_completed | n=<{n}> | count=<{count}>", tv=summary["total_variation"], ks=summary["kolmogorov"])

        if out is not None:
            out = Path(out)
            empirical = empirical_pmf(samples)
            lo, hi = min(empirical.lo, exact.f.lo), max(empirical.hi, exact.f.hi)
            histogram = pd.DataFrame({
                "k": np.arange(lo, hi + 1),
                "empirical": empirical.on_window(lo, hi),
                "exact": exact.f.on_window(lo, hi),
            })
            fields = {**(header or {}), **exact.header(), "count": count, "sampling_seed": seed}
            self._artifact_writer.write_table(histogram, out.with_suffix(".csv"), fields)
            self._artifact_writer.write_report({"config": header or {}, "environment": env.describe(), **summary}, out.with_suffix(".json"))
        return summary
