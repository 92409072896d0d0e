import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from core.domain.entities.diagnostics_report import DiagnosticsReport
from core.domain.entities.environment import Environment
from core.domain.exceptions import ParameterError
from core.domain.services import diagnostics
from core.domain.services.evolution_trace import collect_trace
from core.domain.services.poissonization import truncation_order
from core.ports.outbound.artifact_writer_port import ArtifactWriterPort
from infrastructure.logging import get_logger

logger = get_logger(__name__)

DEFAULT_LEMMA_STARTS = (1, 4, 16, 64)
DEFAULT_INTERVAL = (-2.0, 2.0)


def _continuous_times(horizon: int, tol: float) -> List[float]:
    """Times 1, 2, 4, ... <= horizon / 2 whose truncation order fits the discrete horizon"""
    times, t = [], 1.0
    while t <= horizon / 2 and truncation_order(t, tol) <= horizon:
        times.append(t)
        t *= 2.0
    return times


def build_report(
    env: Environment,
    horizon: int,
    lemma_starts: Sequence[int] = DEFAULT_LEMMA_STARTS,
    tol: float = 1e-12,
    trial_seed: int = 0,
    settings: Optional[Dict[str, Any]] = None,
) -> DiagnosticsReport:
    """
    Every diagnostic for one environment, sharing one pass of a(n,.) up to horizon + 1.

    lemma_bound_a needs a(2N'+2, 0), so it runs with the largest N' the pass supports.
    """
    if horizon < 2:
        raise ParameterError(f"invalid_horizon | N=<{horizon}> | expected N >= 2")
    steps = horizon + 1
    keep = [1 << j for j in range(4, steps.bit_length()) if (1 << j) <= horizon]
    trace = collect_trace(env, steps, keep)

    report = DiagnosticsReport(
        env_fingerprint=env.fingerprint,
        horizon=horizon,
        environment=env.describe(),
        config=dict(settings or {}),
    )
    report.add(diagnostics.gradient_monotonicity(env, horizon, trace))
    for n in lemma_starts:
        if 2 * n <= steps and n <= horizon:
            report.add(diagnostics.lemma_bound_b(env, n, horizon, trace))
    a_horizon = (steps - 2) // 2
    for n in lemma_starts:
        if 1 <= n <= a_horizon:
            report.add(diagnostics.lemma_bound_a(env, n, a_horizon, trace))
    report.add(diagnostics.a4_statistic(env, horizon, trace))

    times = _continuous_times(horizon, tol)
    report.add(diagnostics.a3_statistic(env, horizon, trace, ts=times, tol=tol))
    if len(times) >= 2:
        report.add(diagnostics.continuous_gradient_check(env, times, tol))

    report.add(diagnostics.effective_constants(env, DEFAULT_INTERVAL, math.sqrt(horizon)))
    trials = diagnostics.nash_trial_functions(env, seed=trial_seed)
    report.add(diagnostics.nash_ratio(env, trials))
    report.add(diagnostics.ultracontractivity_check(env, trials))
    if horizon >= 16:
        report.add(diagnostics.equicontinuity_constant(env, horizon, trace))
    return report


class RunDiagnosticsUseCase:
    """Use case for running the diagnostics suite on one or several environments"""

    def __init__(self, artifact_writer: ArtifactWriterPort):
        self._artifact_writer = artifact_writer

    def execute(
        self,
        env: Environment,
        horizon: int,
        out: Optional[Path] = None,
        tol: float = 1e-12,
        settings: Optional[Dict[str, Any]] = None,
    ) -> DiagnosticsReport:
        """Diagnose one environment and optionally write the JSON report"""
        report = build_report(env, horizon, tol=tol, settings=settings)
        self._log_outcome(report)
        if out is not None:
            self._artifact_writer.write_report(report.to_dict(), Path(out))
        return report

    def execute_batch(
        self,
        environments: Sequence[Environment],
        horizon: int,
        out_dir: Path,
        jobs: int = 1,
        tol: float = 1e-12,
        settings: Optional[Dict[str, Any]] = None,
    ) -> List[DiagnosticsReport]:
        """Diagnose several environments, one report file per environment"""
        if jobs <= 1 or len(environments) <= 1:
            reports = [build_report(env, horizon, tol=tol, settings=settings) for env in environments]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(build_report, env, horizon, DEFAULT_LEMMA_STARTS, tol, 0, settings) for env in environments]
                reports = [future.result() for future in futures]
        for report in reports:
            self._log_outcome(report)
            self._artifact_writer.write_report(report.to_dict(), Path(out_dir) / f"report_{report.env_fingerprint}.json")
        return reports

    def _log_outcome(self, report: DiagnosticsReport) -> None:
        failed = [record.name for record in report.failed_lemmas]
        if failed:
            logger.warning(f"diagnostics_violations | fingerprint=<{report.env_fingerprint}>", failed=failed)
        else:
            logger.info(f"diagnostics_passed | fingerprint=<{report.env_fingerprint}> | checks=<{len(report.records)}>")
