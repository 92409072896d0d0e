from abc import ABC, abstractmethod
from pathlib import Path
from typing import Sequence, Tuple

import pandas as pd


class PlotWriterPort(ABC):
    """Outbound port for line plots"""

    @abstractmethod
    def write_plot(self, series: Sequence[Tuple[str, pd.DataFrame]], path: Path, title: str = "") -> Path:
        """Write named series with columns x, value as one line plot"""
        pass
