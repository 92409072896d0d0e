from pathlib import Path
from typing import List, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np
import pandas as pd

from core.ports.outbound.plot_writer_port import PlotWriterPort
from infrastructure.logging import get_logger, log_operation

WIDTH, HEIGHT = 800, 500
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 160, 40, 50
COLORS = ("#1f77b4", "#d62728", "#000000", "#2ca02c", "#9467bd")


def _coord(value: float) -> str:
    return f"{value:.2f}"


class SvgPlotAdapter(PlotWriterPort):
    """Self-contained SVG line plots: one polyline per series, axes and a legend"""

    def __init__(self, enabled: bool = True):
        self.logger = get_logger(__name__)
        self.enabled = enabled

    def write_plot(self, series: Sequence[Tuple[str, pd.DataFrame]], path: Path, title: str = "") -> Path:
        path = Path(path)
        if not self.enabled:
            log_operation(self.logger, "write_plot", str(path), details={"skipped": True})
            return path
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(self.render(series, title))
        log_operation(self.logger, "write_plot", str(path), details={"series": len(series)})
        return path

    def render(self, series: Sequence[Tuple[str, pd.DataFrame]], title: str = "") -> str:
        xs = np.concatenate([frame["x"].to_numpy(dtype=float) for _, frame in series])
        ys = np.concatenate([frame["value"].to_numpy(dtype=float) for _, frame in series])
        x_min, x_max = float(xs.min()), float(xs.max())
        y_min, y_max = min(0.0, float(ys.min())), float(ys.max())
        if x_max == x_min:
            x_max = x_min + 1.0
        if y_max == y_min:
            y_max = y_min + 1.0

        plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

        def sx(x):
            return MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w

        def sy(y):
            return MARGIN_TOP + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h

        bottom, right = MARGIN_TOP + plot_h, MARGIN_LEFT + plot_w
        parts: List[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<line x1="{MARGIN_LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
            f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{bottom}" stroke="black"/>',
            f'<text x="{MARGIN_LEFT}" y="{bottom + 20}" font-size="12">{x_min:.6g}</text>',
            f'<text x="{right}" y="{bottom + 20}" font-size="12" text-anchor="end">{x_max:.6g}</text>',
            f'<text x="{MARGIN_LEFT - 6}" y="{bottom}" font-size="12" text-anchor="end">{y_min:.6g}</text>',
            f'<text x="{MARGIN_LEFT - 6}" y="{MARGIN_TOP + 4}" font-size="12" text-anchor="end">{y_max:.6g}</text>',
        ]
        if title:
            parts.append(f'<text x="{WIDTH / 2}" y="{MARGIN_TOP - 14}" font-size="14" text-anchor="middle">{escape(title)}</text>')

        for index, (name, frame) in enumerate(series):
            color = COLORS[index % len(COLORS)]
            points = " ".join(
                f"{_coord(sx(x))},{_coord(sy(y))}"
                for x, y in zip(frame["x"].to_numpy(dtype=float), frame["value"].to_numpy(dtype=float))
            )
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{points}"/>')
            legend_y = MARGIN_TOP + 20 * index + 10
            parts.append(f'<line x1="{right + 15}" y1="{legend_y}" x2="{right + 40}" y2="{legend_y}" stroke="{color}" stroke-width="2"/>')
            parts.append(f'<text x="{right + 46}" y="{legend_y + 4}" font-size="12">{escape(name)}</text>')

        parts.append("</svg>")
        return "\n".join(parts) + "\n"
