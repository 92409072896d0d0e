import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np
import pandas as pd

from core.domain.entities.environment import Environment
from core.domain.exceptions import UsageError
from core.domain.services.kernel_evolution import forward_pmf, pmf_mean_variance, reversed_a
from core.domain.value_objects.gaussian_ref import GaussianRef
from infrastructure.logging import get_logger

logger = get_logger(__name__)

SPREAD = 5.0


@dataclass
class FigureOne:
    """
    Three curves over the sites k of one environment at time n: the forward pmf,
    the normal density with the pmf's variance, and a(n,.) rescaled to unit mass.
    """
    n: int
    curves: Dict[str, pd.DataFrame]
    constants: Dict[str, float] = field(default_factory=dict)

    @property
    def relative_distance(self) -> float:
        return self.constants["heat_gauss_distance"] / self.constants["gauss_peak"]


def figure1(env: Environment, n: int) -> FigureOne:
    """Curves on k in [-5 sd, 5 sd] clipped to [-n, n]"""
    if n < 1:
        raise UsageError(f"degenerate_scaling | n=<{n}> | expected n >= 1")
    pmf_snapshot = forward_pmf(env, n)
    a = reversed_a(env, n).f
    _, variance = pmf_mean_variance(pmf_snapshot)

    reach = SPREAD * math.sqrt(variance)
    lo, hi = max(-n, math.floor(-reach)), min(n, math.ceil(reach))
    sites = np.arange(lo, hi + 1)

    # unit-mass normalization, equal to omega_0 / E[omega_{X_n}]
    const = 1.0 / a.total()
    gauss = GaussianRef(sigma2=variance, mu=1.0)

    pmf_values = pmf_snapshot.f.on_window(lo, hi)
    gauss_values = gauss.density(sites)
    heat_values = const * a.on_window(lo, hi)

    constants = {
        "const": const,
        "variance": variance,
        "sigma2": variance / n,
        "gauss_peak": gauss.peak,
        "heat_gauss_distance": float(np.max(np.abs(heat_values - gauss_values))),
        "pmf_gauss_distance": float(np.max(np.abs(pmf_values - gauss_values))),
    }
    logger.info(f"figure1_computed | n=<{n}>", **constants)
    return FigureOne(
        n=n,
        curves={
            "pmf": pd.DataFrame({"x": sites, "value": pmf_values}),
            "gauss": pd.DataFrame({"x": sites, "value": gauss_values}),
            "heat": pd.DataFrame({"x": sites, "value": heat_values}),
        },
        constants=constants,
    )
