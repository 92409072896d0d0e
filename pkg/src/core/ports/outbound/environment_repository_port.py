from abc import ABC, abstractmethod
from pathlib import Path
from core.domain.entities.environment import Environment


class EnvironmentRepositoryPort(ABC):
    """Outbound port for environment persistence"""

    @abstractmethod
    def save_environment(self, environment: Environment, path: Path) -> Path:
        """Write an environment so that loading it reproduces every omega bit for bit"""
        pass

    @abstractmethod
    def load_environment(self, path: Path) -> Environment:
        """Read an environment written by save_environment"""
        pass
