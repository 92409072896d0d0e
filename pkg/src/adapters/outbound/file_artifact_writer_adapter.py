import json
from pathlib import Path
from typing import Any, Dict

import pandas as pd

from core.ports.outbound.artifact_writer_port import ArtifactWriterPort
from infrastructure.logging import get_logger, log_operation

FLOAT_FORMAT = "%.17g"


def format_header_value(value: Any) -> str:
    """Header values: repr for floats, comma lists for sequences, 'none' for None"""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(format_header_value(v) for v in value)
    return str(value)


class FileArtifactWriterAdapter(ArtifactWriterPort):
    """CSV and JSON artifacts on the local filesystem; output depends only on the data"""

    def __init__(self, emit_csv: bool = True, emit_json: bool = True):
        self.logger = get_logger(__name__)
        self.emit_csv = emit_csv
        self.emit_json = emit_json

    def write_table(self, frame: pd.DataFrame, path: Path, header: Dict[str, Any]) -> Path:
        path = Path(path)
        if not self.emit_csv:
            log_operation(self.logger, "write_table", str(path), details={"skipped": True})
            return path
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            for key, value in header.items():
                handle.write(f"# {key}={format_header_value(value)}\n")
            frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        log_operation(self.logger, "write_table", str(path), details={"rows": len(frame)})
        return path

    def write_report(self, payload: Dict[str, Any], path: Path) -> Path:
        path = Path(path)
        if not self.emit_json:
            log_operation(self.logger, "write_report", str(path), details={"skipped": True})
            return path
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(json.dumps(payload, indent=2, allow_nan=False))
            handle.write("\n")
        log_operation(self.logger, "write_report", str(path))
        return path
