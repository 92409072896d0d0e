from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict

import pandas as pd


class ArtifactWriterPort(ABC):
    """Outbound port for run artifacts (tables and reports)"""

    @abstractmethod
    def write_table(self, frame: pd.DataFrame, path: Path, header: Dict[str, Any]) -> Path:
        """Write a table as CSV with '# key=value' header lines"""
        pass

    @abstractmethod
    def write_report(self, payload: Dict[str, Any], path: Path) -> Path:
        """Write a JSON report"""
        pass
