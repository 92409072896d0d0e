import pytest

from core.domain.entities.environment import Environment
from core.domain.value_objects.environment_law import ConstantLaw, PeriodicLaw, UniformLaw
from infrastructure.config import reset_config
from infrastructure.dependency_injection import reset_container
from infrastructure.logging import configure_logging

BLLT_VARIABLES = ("BLLT_SEED", "BLLT_JOBS", "BLLT_POISSON_TOL", "BLLT_OUTPUT_DIR", "LOG_FILE", "LOG_FORMAT")


@pytest.fixture
def constant_env():
    """Factory for homogeneous environments on [-half_width, half_width]"""
    def make(omega: float = 0.5, half_width: int = 300) -> Environment:
        return Environment.generate(ConstantLaw(omega), (-half_width, half_width))
    return make


@pytest.fixture
def uniform_env():
    """Factory for seeded uniform(a, b] environments on [-half_width, half_width]"""
    def make(seed: int = 7, half_width: int = 600, a: float = 0.1, b: float = 0.5) -> Environment:
        return Environment.generate(UniformLaw(a, b), (-half_width, half_width), seed)
    return make


@pytest.fixture
def periodic_env():
    def make(pattern=(0.25, 0.5), half_width: int = 600) -> Environment:
        return Environment.generate(PeriodicLaw(tuple(pattern)), (-half_width, half_width))
    return make


@pytest.fixture
def clean_settings(monkeypatch, tmp_path):
    """Run in an empty directory with no laboratory variables set"""
    monkeypatch.chdir(tmp_path)
    for name in BLLT_VARIABLES:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    reset_config()
    reset_container()
    yield tmp_path
    reset_config()
    reset_container()
    # CliRunner closes the stream the CLI bound its handler to
    configure_logging(level="WARNING")
