from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import pandas as pd

from core.domain.entities.environment import Environment
from core.domain.exceptions import ParameterError
from core.domain.services.figure_one import FigureOne, figure1
from core.domain.services.local_limit import (
    continuous_profile,
    convergence_curve,
    default_reference,
    modulated_profile,
)
from core.domain.services.poissonization import poissonized
from core.ports.outbound.artifact_writer_port import ArtifactWriterPort
from core.ports.outbound.plot_writer_port import PlotWriterPort
from infrastructure.logging import get_logger

logger = get_logger(__name__)

# CLI spelling -> discrete variant of the sup-error
VARIANTS = {"g": "g", "a": "pmf", "pmf": "pmf", "raw": "raw", "continuous": "continuous"}


class VerifyLocalLimitUseCase:
    """Use case for local limit verification: convergence tables, profiles and the three-curve figure"""

    def __init__(self, artifact_writer: ArtifactWriterPort, plot_writer: PlotWriterPort):
        self._artifact_writer = artifact_writer
        self._plot_writer = plot_writer

    def execute(
        self,
        env: Environment,
        times: Sequence[float],
        interval: Tuple[float, float],
        variant: str,
        out: Optional[Path] = None,
        variance_route: bool = False,
        tol: float = 1e-12,
        header: Optional[Dict[str, Any]] = None,
    ) -> pd.DataFrame:
        """Sup-error per time; writes the table and the profile at the last time"""
        if variant not in VARIANTS:
            raise ParameterError(f"unknown_variant | variant=<{variant}> | expected one of {sorted(VARIANTS)}")
        internal = VARIANTS[variant]
        if internal != "continuous":
            if any(float(n) != int(n) for n in times):
                raise ParameterError(f"invalid_n_list | variant=<{variant}> | discrete variants need integer n")
            times = [int(n) for n in times]
        table = convergence_curve(env, list(times), interval, None, internal, variance_route, tol)

        if out is not None:
            out = Path(out)
            last = times[-1]
            gref = default_reference(env, last, interval, variance_route)
            fields = {**(header or {}), "variant": variant, "interval": list(interval), **gref.to_dict()}
            self._artifact_writer.write_table(table, out.with_suffix(".csv"), fields)
            if internal == "continuous":
                profile = continuous_profile(env, poissonized(env, last, tol), interval)
            else:
                profile = modulated_profile(env, int(last), interval, internal)
            self._artifact_writer.write_table(
                profile.to_frame(),
                out.with_name(out.stem + "_profile.csv"),
                {**fields, "time": last, "profile": profile.variant.value},
            )
        return table

    def figure(self, env: Environment, n: int, out_prefix: Path, header: Optional[Dict[str, Any]] = None) -> FigureOne:
        """Write <prefix>_pmf.csv, <prefix>_gauss.csv, <prefix>_heat.csv and <prefix>.svg"""
        result = figure1(env, n)
        out_prefix = Path(out_prefix)
        fields = {**(header or {}), "n": n, **result.constants}
        for name, frame in result.curves.items():
            self._artifact_writer.write_table(frame, out_prefix.with_name(f"{out_prefix.name}_{name}.csv"), {**fields, "curve": name})
        self._plot_writer.write_plot(
            [
                ("P(X_n = k)", result.curves["pmf"]),
                ("normal density", result.curves["gauss"]),
                ("const * a(n,k)", result.curves["heat"]),
            ],
            out_prefix.with_name(f"{out_prefix.name}.svg"),
            title=f"n = {n}",
        )
        logger.info(f"figure1_written | prefix=<{out_prefix}>", relative_distance=result.relative_distance)
        return result
