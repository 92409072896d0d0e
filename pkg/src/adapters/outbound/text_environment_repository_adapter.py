from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from core.ports.outbound.environment_repository_port import EnvironmentRepositoryPort
from core.domain.entities.environment import Environment
from core.domain.exceptions import EnvironmentParseError, ParameterError
from core.domain.value_objects.environment_law import parse_law
from infrastructure.logging import get_logger, log_operation

FORMAT_LINE = "# balanced-llt environment v1"
HEADER_KEYS = ("law", "seed", "lo")


class TextEnvironmentRepositoryAdapter(EnvironmentRepositoryPort):
    """
    Plain-text environment files.

    Three header lines (law=, seed=, lo=) followed by one omega per line as a
    hexadecimal float, so a save/load cycle is bit-exact. Lines starting with '#'
    and blank lines are ignored.
    """

    def __init__(self):
        self.logger = get_logger(__name__)

    def save_environment(self, environment: Environment, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        seed = "none" if environment.seed is None else str(environment.seed)
        lines = [
            FORMAT_LINE,
            f"# generator={environment.generator or 'none'}",
            f"# fingerprint={environment.fingerprint}",
            f"law={environment.law.describe()}",
            f"seed={seed}",
            f"lo={environment.lo}",
        ]
        lines.extend(float(w).hex() for w in environment.omegas)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("\n".join(lines) + "\n")
        log_operation(self.logger, "save_environment", environment.fingerprint, details={"path": str(path), "sites": int(environment.omegas.size)})
        return path

    def load_environment(self, path: Path) -> Environment:
        path = Path(path)
        with open(path, "r", encoding="utf-8") as handle:
            content = handle.read()
        header, values = self._split(content.splitlines())
        law = self._parse_law(header)
        seed = self._parse_seed(header, law.is_stochastic)
        lo = self._parse_int(header, "lo")
        omegas = self._parse_values(values)
        environment = Environment(lo=lo, omegas=omegas, law=law, seed=seed)
        log_operation(self.logger, "load_environment", environment.fingerprint, details={"path": str(path), "window": list(environment.window)})
        return environment

    def _split(self, lines: List[str]) -> Tuple[dict, List[Tuple[int, str]]]:
        header = {}
        values: List[Tuple[int, str]] = []
        for number, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" in line:
                if values:
                    raise EnvironmentParseError("header_after_values", line=number, field=line.split("=", 1)[0])
                key, value = (part.strip() for part in line.split("=", 1))
                if key not in HEADER_KEYS:
                    raise EnvironmentParseError("unknown_header_key", line=number, field=key)
                if key in header:
                    raise EnvironmentParseError("duplicate_header_key", line=number, field=key)
                header[key] = (number, value)
            else:
                values.append((number, line))
        for key in HEADER_KEYS:
            if key not in header:
                raise EnvironmentParseError("missing_header_key", field=key)
        return header, values

    def _parse_law(self, header: dict):
        number, text = header["law"]
        try:
            return parse_law(text)
        except ParameterError as e:
            raise EnvironmentParseError(f"invalid_law | {e}", line=number, field="law") from e

    def _parse_seed(self, header: dict, required: bool) -> Optional[int]:
        number, text = header["seed"]
        if text.lower() == "none":
            if required:
                raise EnvironmentParseError("seed_required_for_stochastic_law", line=number, field="seed")
            return None
        return self._parse_int(header, "seed")

    def _parse_int(self, header: dict, key: str) -> int:
        number, text = header[key]
        try:
            return int(text)
        except ValueError as e:
            raise EnvironmentParseError(f"invalid_integer | value=<{text}>", line=number, field=key) from e

    def _parse_values(self, values: List[Tuple[int, str]]) -> np.ndarray:
        if not values:
            raise EnvironmentParseError("no_omega_values", field="omega")
        parsed = np.empty(len(values))
        for index, (number, text) in enumerate(values):
            try:
                parsed[index] = float.fromhex(text)
            except ValueError as e:
                raise EnvironmentParseError(f"invalid_hex_float | value=<{text}>", line=number, field="omega") from e
        return parsed
