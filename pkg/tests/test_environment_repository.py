import numpy as np
import pytest

from adapters.outbound.text_environment_repository_adapter import TextEnvironmentRepositoryAdapter
from core.domain.exceptions import EnvironmentParseError, OmegaDomainError

VALID_HEADER = "law=constant:0.25\nseed=none\nlo=-1\n"


@pytest.fixture
def repository():
    return TextEnvironmentRepositoryAdapter()


def write(tmp_path, text):
    path = tmp_path / "env.txt"
    path.write_text(text)
    return path


def test_round_trip_is_bit_exact(repository, uniform_env, tmp_path):
    env = uniform_env(seed=99, half_width=500)
    path = repository.save_environment(env, tmp_path / "nested" / "env.txt")
    loaded = repository.load_environment(path)
    assert loaded.lo == env.lo
    assert loaded.seed == 99
    assert loaded.law.describe() == env.law.describe()
    assert np.array_equal(loaded.omegas, env.omegas)
    assert loaded.fingerprint == env.fingerprint


def test_saved_file_layout(repository, uniform_env, tmp_path):
    env = uniform_env(seed=5, half_width=2)
    lines = repository.save_environment(env, tmp_path / "env.txt").read_text().splitlines()
    assert lines[0].startswith("#")
    assert "# generator=PCG64" in lines
    assert f"# fingerprint={env.fingerprint}" in lines
    assert "law=uniform:0.1,0.5" in lines
    assert "seed=5" in lines and "lo=-2" in lines
    assert len(lines) == 6 + 5
    assert float.fromhex(lines[6]) == env.omegas[0]


def test_saving_twice_is_byte_identical(repository, uniform_env, tmp_path):
    env = uniform_env(seed=5, half_width=50)
    first = repository.save_environment(env, tmp_path / "a.txt").read_bytes()
    second = repository.save_environment(env, tmp_path / "b.txt").read_bytes()
    assert first == second


def test_deterministic_law_records_no_seed(repository, constant_env, tmp_path):
    path = repository.save_environment(constant_env(0.25, 3), tmp_path / "env.txt")
    assert "seed=none" in path.read_text().splitlines()
    assert repository.load_environment(path).seed is None


@pytest.mark.parametrize(
    "text, line, field",
    [
        ("law=constant:0.25\nseed=none\n", None, "lo"),
        ("law=constant:0.25\nseed=none\nlo=-1\ncolour=red\n", 4, "colour"),
        ("law=constant:0.25\nlaw=constant:0.3\nseed=none\nlo=-1\n", 2, "law"),
        ("law=gamma:1\nseed=none\nlo=-1\n0x1.0p-2\n", 1, "law"),
        ("law=uniform:0.1,0.5\nseed=none\nlo=-1\n0x1.0p-2\n", 2, "seed"),
        ("law=constant:0.25\nseed=none\nlo=minus one\n0x1.0p-2\n", 3, "lo"),
        (VALID_HEADER, None, "omega"),
        (VALID_HEADER + "0x1.0p-2\nquarter\n", 5, "omega"),
        (VALID_HEADER + "0x1.0p-2\nlo=3\n", 5, "lo"),
    ],
)
def test_parse_errors_name_line_and_field(repository, tmp_path, text, line, field):
    with pytest.raises(EnvironmentParseError) as info:
        repository.load_environment(write(tmp_path, text))
    assert info.value.line == line
    assert info.value.field == field


def test_omega_out_of_range_is_rejected(repository, tmp_path):
    # 0.75 is not a valid balanced triplet weight
    with pytest.raises(OmegaDomainError) as info:
        repository.load_environment(write(tmp_path, VALID_HEADER + "0x1.8p-1\n"))
    assert info.value.site == -1


def test_missing_file(repository, tmp_path):
    with pytest.raises(FileNotFoundError):
        repository.load_environment(tmp_path / "absent.txt")
