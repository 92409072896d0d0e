from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from core.domain.entities.diagnostics_report import DiagnosticsReport
from core.domain.entities.environment import Environment
from core.domain.entities.kernel_snapshot import KernelSnapshot
from core.domain.services.figure_one import FigureOne


class LaboratoryServicePort(ABC):
    """Inbound port for the laboratory commands"""

    @abstractmethod
    def generate_environment(self, law: str, window: Tuple[int, int], seed: Optional[int], out: Optional[Path]) -> Environment:
        """Instantiate an environment and save it when out is given"""
        pass

    @abstractmethod
    def load_environment(self, path: Path) -> Environment:
        """Read an environment file"""
        pass

    @abstractmethod
    def evolve(self, env: Environment, kind: str, time: float, tol: float, out: Optional[Path], header: Dict[str, Any]) -> KernelSnapshot:
        """Compute one kernel snapshot (forward, reversed_a, reversed_b, heatstep or poissonized)"""
        pass

    @abstractmethod
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
        pass

    @abstractmethod
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
        pass

    @abstractmethod
    def figure_one(self, env: Environment, n: int, out_prefix: Path, header: Dict[str, Any]) -> FigureOne:
        """Write the three aligned curves and their plot"""
        pass

    @abstractmethod
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
        pass
