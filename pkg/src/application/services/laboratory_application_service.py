from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from core.ports.inbound.laboratory_service_port import LaboratoryServicePort
from core.ports.outbound.artifact_writer_port import ArtifactWriterPort
from core.ports.outbound.environment_repository_port import EnvironmentRepositoryPort
from core.domain.entities.diagnostics_report import DiagnosticsReport
from core.domain.entities.environment import Environment
from core.domain.entities.kernel_snapshot import KernelSnapshot
from core.domain.exceptions import CheckViolationError, ParameterError
from core.domain.services import kernel_evolution
from core.domain.services.figure_one import FigureOne
from core.domain.services.monte_carlo import default_seed
from core.domain.services.poissonization import poissonized
from core.domain.value_objects.environment_law import parse_law
from core.use_cases.monte_carlo_cross_check_use_case import MonteCarloCrossCheckUseCase
from core.use_cases.run_diagnostics_use_case import RunDiagnosticsUseCase
from core.use_cases.verify_local_limit_use_case import VerifyLocalLimitUseCase
from infrastructure.logging import get_logger

DISCRETE_KINDS = {
    "forward": kernel_evolution.forward_pmf,
    "reversed_a": kernel_evolution.reversed_a,
    "heatstep": kernel_evolution.reversed_a_heatstep,
    "reversed_b": kernel_evolution.reversed_b,
}
EVOLVE_KINDS = tuple(DISCRETE_KINDS) + ("poissonized",)


class LaboratoryApplicationService(LaboratoryServicePort):
    """Application service wiring environments, evolution, diagnostics and local limit checks"""

    def __init__(
        self,
        environment_repository: EnvironmentRepositoryPort,
        artifact_writer: ArtifactWriterPort,
        run_diagnostics_use_case: RunDiagnosticsUseCase,
        verify_local_limit_use_case: VerifyLocalLimitUseCase,
        monte_carlo_use_case: MonteCarloCrossCheckUseCase,
    ):
        self._environment_repository = environment_repository
        self._artifact_writer = artifact_writer
        self._run_diagnostics_use_case = run_diagnostics_use_case
        self._verify_local_limit_use_case = verify_local_limit_use_case
        self._monte_carlo_use_case = monte_carlo_use_case
        self._logger = get_logger(__name__)

    def generate_environment(self, law: str, window: Tuple[int, int], seed: Optional[int], out: Optional[Path]) -> Environment:
        """Instantiate an environment and save it when out is given"""
        environment = Environment.generate(parse_law(law), window, seed)
        self._logger.info(f"environment_generated | fingerprint=<{environment.fingerprint}>", **environment.describe())
        if out is not None:
            self._environment_repository.save_environment(environment, Path(out))
        return environment

    def load_environment(self, path: Path) -> Environment:
        """Read an environment file"""
        return self._environment_repository.load_environment(Path(path))

    def evolve(self, env: Environment, kind: str, time: float, tol: float, out: Optional[Path], header: Dict[str, Any]) -> KernelSnapshot:
        """Compute one kernel snapshot and write it as k,value rows"""
        if kind == "poissonized":
            snapshot = poissonized(env, float(time), tol)
        elif kind in DISCRETE_KINDS:
            if float(time) != int(time):
                raise ParameterError(f"invalid_horizon | n=<{time}> | discrete kernels need an integer n")
            snapshot = DISCRETE_KINDS[kind](env, int(time))
        else:
            raise ParameterError(f"unknown_kind | kind=<{kind}> | expected one of {EVOLVE_KINDS}")
        if out is not None:
            self._artifact_writer.write_table(snapshot.f.to_frame(), Path(out), {**header, **snapshot.header()})
        return snapshot

    def local_limit(
        self,
        env: Environment,
        times: Sequence[float],
        interval: Tuple[float, float],
        variant: str,
        variance_route: bool,
        tol: float,
        out: Optional[Path],
        header: Dict[str, Any],
    ) -> pd.DataFrame:
        """Sup-errors of the local limit theorem, one row per time"""
        return self._verify_local_limit_use_case.execute(env, times, interval, variant, out, variance_route, tol, header)

    def diagnose(
        self,
        environments: Sequence[Environment],
        horizon: int,
        out: Optional[Path],
        jobs: int,
        tol: float,
        header: Dict[str, Any],
    ) -> List[DiagnosticsReport]:
        """Run the diagnostics suite; raises CheckViolationError when a lemma check fails"""
        if len(environments) == 1:
            reports = [self._run_diagnostics_use_case.execute(environments[0], horizon, out, tol, header)]
        else:
            out_dir = Path(out) if out is not None else Path(".")
            reports = self._run_diagnostics_use_case.execute_batch(environments, horizon, out_dir, jobs, tol, header)

        failed = [f"{report.env_fingerprint}:{record.name}" for report in reports for record in report.failed_lemmas]
        if failed:
            raise CheckViolationError(f"lemma_check_violated | failed=<{', '.join(failed)}>", failed)
        return reports

    def figure_one(self, env: Environment, n: int, out_prefix: Path, header: Dict[str, Any]) -> FigureOne:
        """Write the three aligned curves and their plot"""
        return self._verify_local_limit_use_case.figure(env, n, out_prefix, header)

    def monte_carlo(
        self,
        env: Environment,
        n: int,
        count: int,
        seed: Optional[int],
        jobs: int,
        out: Optional[Path],
        header: Dict[str, Any],
    ) -> Dict[str, Any]:
        """Cross-check exact evolution against simulated endpoints"""
        return self._monte_carlo_use_case.execute(env, n, count, default_seed(env, seed), jobs, out, header)
