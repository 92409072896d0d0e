"""
Per-run configuration for the command-line adapter

A run is described by a RunConfig assembled from three layers: built-in defaults, an optional
key=value config file, and command-line flags, later layers winning. The process-wide settings
from infrastructure.config supply fallbacks for the seed, tolerance and worker count.
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from core.domain.exceptions import UsageError

COMMANDS = ("gen-env", "evolve", "llt", "diagnose", "figure1", "montecarlo")
ARTIFACT_KINDS = ("csv", "json", "svg")


def _split_list(value: Any) -> Any:
    """'a,b,c' -> ['a', 'b', 'c']; lists and scalars pass through"""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    if isinstance(value, (int, float)):
        return [value]
    return value


class RunConfig(BaseModel):
    """Effective configuration of one CLI run"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Literal["gen-env", "evolve", "llt", "diagnose", "figure1", "montecarlo"]
    env: List[Path] = Field(default_factory=list, description="Environment files")
    law: Optional[str] = Field(None, description="Inline environment law, e.g. uniform:0.1,0.5")
    seed: Optional[int] = Field(None, ge=0, lt=2**64, description="Environment seed")
    window: Optional[Tuple[int, int]] = Field(None, description="Inline environment window lo,hi")
    n: List[float] = Field(default_factory=list, description="Time(s) n or t")
    horizon: Optional[int] = Field(None, ge=2, description="Diagnostics horizon N")
    interval: Tuple[float, float] = Field((-2.0, 2.0), description="Compact interval I = [a, b]")
    variant: Literal["g", "a", "pmf", "raw", "continuous"] = "g"
    kind: Literal["forward", "reversed_a", "reversed_b", "heatstep", "poissonized"] = "forward"
    variance_route: bool = False
    tol: float = Field(1e-12, gt=0.0, le=1e-6, description="Poisson truncation tolerance")
    count: int = Field(100_000, ge=1, description="Monte Carlo sample count")
    sample_seed: Optional[int] = Field(None, ge=0, lt=2**64, description="Monte Carlo sampling seed")
    jobs: int = Field(1, ge=1, description="Worker cap")
    out: Optional[Path] = None
    emit: List[Literal["csv", "json", "svg"]] = Field(default_factory=lambda: list(ARTIFACT_KINDS))

    @field_validator("env", "n", "emit", mode="before")
    @classmethod
    def _lists(cls, value: Any) -> Any:
        return _split_list(value)

    @field_validator("window", "interval", mode="before")
    @classmethod
    def _pairs(cls, value: Any) -> Any:
        value = _split_list(value)
        if isinstance(value, list) and len(value) != 2:
            raise ValueError("expected two comma-separated values")
        return value

    @model_validator(mode="after")
    def _check_command(self) -> "RunConfig":
        a, b = self.interval
        if not a < b:
            raise ValueError(f"interval must satisfy a < b, got {a},{b}")
        if self.command == "gen-env":
            if self.law is None or self.window is None:
                raise ValueError("gen-env needs law and window")
            if self.out is None:
                raise ValueError("gen-env needs out")
            return self

        if not self.env and (self.law is None or self.window is None):
            raise ValueError(f"{self.command} needs env or law and window")
        if len(self.env) > 1 and self.command != "diagnose":
            raise ValueError(f"{self.command} takes a single environment")
        if self.command == "diagnose":
            if self.horizon is None:
                raise ValueError("diagnose needs horizon")
        elif self.command == "llt":
            if not self.n:
                raise ValueError("llt needs at least one n")
        else:
            if len(self.n) != 1:
                raise ValueError(f"{self.command} needs exactly one n")
            if self.command != "evolve" or self.kind != "poissonized":
                if self.n[0] != int(self.n[0]) or self.n[0] < 0:
                    raise ValueError(f"{self.command} needs a non-negative integer n")
        if self.command == "figure1" and self.out is None:
            raise ValueError("figure1 needs out")
        return self

    @property
    def times(self) -> List[float]:
        return list(self.n)

    @property
    def steps(self) -> int:
        return int(self.n[0])

    def emits(self, kind: str) -> bool:
        return kind in self.emit

    def header(self) -> Dict[str, Any]:
        """Non-empty fields in a stable order, for artifact headers"""
        dumped = self.model_dump(mode="json")
        return {key: value for key, value in dumped.items() if value is not None and value != []}


def read_config_file(path: Path) -> Dict[str, str]:
    """
    Parse a key=value config file with python-dotenv.

    Comments, blank lines, quoting and `export` prefixes follow dotenv syntax; a repeated
    key keeps its last value. Keys may use '-' or '_'. Unknown keys and keys without a
    value are errors.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    known = set(RunConfig.model_fields)
    values: Dict[str, str] = {}
    for raw_key, value in dotenv_values(path, interpolate=False, encoding="utf-8").items():
        key = raw_key.replace("-", "_")
        if key not in known:
            raise UsageError(f"unknown_config_key | path=<{path}> | key=<{key}>")
        if value is None:
            raise UsageError(f"invalid_config_line | path=<{path}> | key=<{key}> | expected key=value")
        values[key] = value.strip()
    return values


def load_run_config(
    command: str,
    flags: Dict[str, Any],
    config_file: Optional[Path] = None,
    fallbacks: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """
    Merge defaults, config file and flags into a validated RunConfig.

    Args:
        command: Sub-command being run
        flags: Options given on the command line (only explicitly passed ones)
        config_file: Optional key=value file
        fallbacks: Process-wide defaults used when neither file nor flags set a key

    Raises:
        UsageError: On unknown keys, a command mismatch, or a validation failure
    """
    values: Dict[str, Any] = {}
    if config_file is not None:
        values.update(read_config_file(Path(config_file)))
    file_command = values.pop("command", None)
    if file_command is not None and file_command != command:
        raise UsageError(f"command_mismatch | config=<{file_command}> | invoked=<{command}>")

    unknown = sorted(set(flags) - set(RunConfig.model_fields))
    if unknown:
        raise UsageError(f"unknown_options | options=<{', '.join(unknown)}>")
    values.update({key: value for key, value in flags.items() if value is not None})

    for key, value in (fallbacks or {}).items():
        if values.get(key) is None and value is not None:
            values[key] = value
    values["command"] = command

    try:
        return RunConfig(**values)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}" for error in e.errors()
        )
        raise UsageError(f"invalid_run_config | command=<{command}> | {details}")
