"""
Configuration management for the balanced random walk laboratory

This module reads process-wide settings from environment variables (and an
optional .env file) and validates them with helpful error messages. Per-run
settings live in the CLI's RunConfig; these are the defaults underneath it.
"""

import os
from dataclasses import dataclass
from typing import Optional
from pathlib import Path


def get_logger(name: str):
    """Simple logger function to avoid circular imports"""
    import logging
    return logging.getLogger(name)


logger = get_logger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class LoggingConfig:
    """Logging configuration"""
    level: str = "INFO"
    json_format: bool = False
    log_file: Optional[Path] = None

    def validate(self) -> None:
        """Validate logging configuration"""
        if self.level.upper() not in LOG_LEVELS:
            raise ValueError(f"LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")


@dataclass(frozen=True)
class OutputConfig:
    """Where artifacts go"""
    output_dir: Path = Path(".")

    def resolve(self, path: Path) -> Path:
        """Relative artifact paths are taken relative to output_dir"""
        path = Path(path)
        return path if path.is_absolute() else self.output_dir / path


@dataclass(frozen=True)
class NumericsConfig:
    """Numerical defaults"""
    poisson_tol: float = 1e-12
    default_seed: Optional[int] = None

    def validate(self) -> None:
        """Validate numerical defaults"""
        if not (0.0 < self.poisson_tol <= 1e-6):
            raise ValueError("BLLT_POISSON_TOL must lie in (0, 1e-6]")
        if self.default_seed is not None and not (0 <= self.default_seed < 2**64):
            raise ValueError("BLLT_SEED must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class ExecutionConfig:
    """Parallelism limits"""
    jobs: int = 1

    def validate(self) -> None:
        """Validate execution configuration"""
        if self.jobs < 1:
            raise ValueError("BLLT_JOBS must be at least 1")


def _default(value: Optional[int], fallback: int) -> int:
    return fallback if value is None else value


def _optional_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class LaboratoryConfig:
    """Main application configuration"""
    logging: LoggingConfig
    output: OutputConfig
    numerics: NumericsConfig
    execution: ExecutionConfig

    @classmethod
    def from_env(cls, env_file: Optional[str] = None) -> 'LaboratoryConfig':
        """Create configuration from environment variables"""
        if env_file or Path(".env").exists():
            from dotenv import load_dotenv
            load_dotenv(env_file or ".env", override=True)

        log_file = os.getenv("LOG_FILE")
        try:
            return cls(
                logging=LoggingConfig(
                    level=os.getenv("LOG_LEVEL", "INFO").upper(),
                    json_format=os.getenv("LOG_FORMAT", "text").lower() == "json",
                    log_file=Path(log_file) if log_file else None,
                ),
                output=OutputConfig(output_dir=Path(os.getenv("BLLT_OUTPUT_DIR", "."))),
                numerics=NumericsConfig(
                    poisson_tol=float(os.getenv("BLLT_POISSON_TOL", "1e-12")),
                    default_seed=_optional_int("BLLT_SEED"),
                ),
                execution=ExecutionConfig(jobs=_default(_optional_int("BLLT_JOBS"), 1)),
            )
        except ValueError as e:
            raise ValueError(f"Configuration validation failed: {str(e)}")

    def validate(self) -> None:
        """Validate all configuration settings"""
        try:
            self.logging.validate()
            self.numerics.validate()
            self.execution.validate()
        except ValueError as e:
            raise ValueError(f"Configuration validation failed: {str(e)}")

    def print_status(self) -> None:
        """Print configuration status for debugging"""
        logger.debug(f"log_level=<{self.logging.level}> | json_logs=<{self.logging.json_format}> | configuration status")
        logger.debug(f"output_dir=<{self.output.output_dir}> | jobs=<{self.execution.jobs}>")
        logger.debug(
            f"poisson_tol=<{self.numerics.poisson_tol}> | "
            f"default_seed=<{self.numerics.default_seed if self.numerics.default_seed is not None else 'not_set'}>"
        )


_config: Optional[LaboratoryConfig] = None


def get_config() -> LaboratoryConfig:
    """Get the global configuration instance"""
    global _config
    if _config is None:
        _config = LaboratoryConfig.from_env()
        _config.validate()
    return _config


def initialize_config(env_file: Optional[str] = None, validate: bool = True) -> LaboratoryConfig:
    """Initialize the global configuration"""
    global _config
    _config = LaboratoryConfig.from_env(env_file)
    if validate:
        _config.validate()
    return _config


def reset_config() -> None:
    """Reset the global configuration (useful for testing)"""
    global _config
    _config = None
