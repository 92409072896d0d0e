from pathlib import Path

import pytest

from adapters.inbound.run_config import RunConfig, load_run_config, read_config_file
from core.domain.exceptions import UsageError
from infrastructure.config import LaboratoryConfig, get_config, initialize_config


class TestLaboratoryConfig:
    def test_defaults(self, clean_settings):
        settings = LaboratoryConfig.from_env()
        settings.validate()
        assert settings.numerics.poisson_tol == 1e-12
        assert settings.numerics.default_seed is None
        assert settings.execution.jobs == 1
        assert settings.output.output_dir == Path(".")
        assert settings.logging.level == "WARNING"

    def test_environment_variables(self, clean_settings, monkeypatch):
        monkeypatch.setenv("BLLT_SEED", "42")
        monkeypatch.setenv("BLLT_JOBS", "4")
        monkeypatch.setenv("BLLT_POISSON_TOL", "1e-9")
        monkeypatch.setenv("BLLT_OUTPUT_DIR", "artifacts")
        monkeypatch.setenv("LOG_FORMAT", "json")
        settings = initialize_config()
        assert settings.numerics.default_seed == 42
        assert settings.execution.jobs == 4
        assert settings.numerics.poisson_tol == 1e-9
        assert settings.logging.json_format
        assert settings.output.resolve(Path("out.csv")) == Path("artifacts") / "out.csv"
        assert settings.output.resolve(Path("/tmp/out.csv")) == Path("/tmp/out.csv")
        assert get_config() is settings

    def test_dotenv_file_in_working_directory(self, clean_settings, monkeypatch):
        (clean_settings / ".env").write_text("BLLT_SEED=11\n")
        monkeypatch.setenv("BLLT_SEED", "0")
        assert LaboratoryConfig.from_env().numerics.default_seed == 11

    @pytest.mark.parametrize(
        "name, value",
        [("BLLT_POISSON_TOL", "1e-3"), ("BLLT_POISSON_TOL", "0"), ("BLLT_JOBS", "0"), ("BLLT_SEED", "-1"), ("LOG_LEVEL", "LOUD")],
    )
    def test_invalid_values(self, clean_settings, monkeypatch, name, value):
        monkeypatch.setenv(name, value)
        with pytest.raises(ValueError, match="Configuration validation failed"):
            initialize_config()

    @pytest.mark.parametrize("name", ["BLLT_SEED", "BLLT_JOBS", "BLLT_POISSON_TOL"])
    def test_unparsable_values(self, clean_settings, monkeypatch, name):
        monkeypatch.setenv(name, "many")
        with pytest.raises(ValueError):
            LaboratoryConfig.from_env()


class TestRunConfig:
    def test_comma_lists_and_pairs(self):
        run = RunConfig(command="llt", law="constant:0.5", window="-10,10", n="4,16,64", interval="-1,1")
        assert run.window == (-10, 10)
        assert run.times == [4.0, 16.0, 64.0]
        assert run.interval == (-1.0, 1.0)
        assert run.emits("svg")

    def test_header_omits_unset_fields(self):
        header = RunConfig(command="figure1", law="constant:0.5", window="-10,10", n=4, out="fig").header()
        assert header["command"] == "figure1"
        assert header["n"] == [4.0]
        assert "seed" not in header and "env" not in header

    @pytest.mark.parametrize(
        "fields",
        [
            {"command": "gen-env", "law": "constant:0.5", "window": "-1,1"},
            {"command": "llt", "window": "-1,1", "n": "4"},
            {"command": "llt", "law": "constant:0.5", "window": "-1,1"},
            {"command": "diagnose", "law": "constant:0.5", "window": "-1,1"},
            {"command": "evolve", "law": "constant:0.5", "window": "-1,1", "n": "4,8"},
            {"command": "evolve", "law": "constant:0.5", "window": "-1,1", "n": "2.5"},
            {"command": "montecarlo", "law": "constant:0.5", "window": "-1,1", "n": "-3"},
            {"command": "figure1", "law": "constant:0.5", "window": "-1,1", "n": "4"},
            {"command": "llt", "env": "a.txt,b.txt", "n": "4"},
            {"command": "llt", "law": "constant:0.5", "window": "-1,1,2", "n": "4"},
            {"command": "llt", "law": "constant:0.5", "window": "-1,1", "n": "4", "interval": "1,-1"},
            {"command": "diagnose", "law": "constant:0.5", "window": "-1,1", "horizon": 1},
            {"command": "diagnose", "law": "constant:0.5", "window": "-1,1", "horizon": 8, "tol": 1e-3},
            {"command": "llt", "law": "constant:0.5", "window": "-1,1", "n": "4", "emit": "csv,png"},
        ],
    )
    def test_invalid_runs(self, fields):
        with pytest.raises(ValueError):
            RunConfig(**fields)

    def test_poissonized_evolve_takes_real_time(self):
        run = RunConfig(command="evolve", law="constant:0.5", window="-1,1", kind="poissonized", n="2.5")
        assert run.times == [2.5]

    def test_diagnose_accepts_several_environments(self):
        run = RunConfig(command="diagnose", env=["a.txt", "b.txt"], horizon=8)
        assert run.env == [Path("a.txt"), Path("b.txt")]


class TestConfigFile:
    def test_read_skips_comments_and_normalizes_keys(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("# comment\n\nlaw = uniform:0.1,0.5\nsample-seed=3\n")
        assert read_config_file(path) == {"law": "uniform:0.1,0.5", "sample_seed": "3"}

    @pytest.mark.parametrize(
        "text, message",
        [("colour=red\n", "unknown_config_key"), ("law=constant:0.5\nseed\n", "invalid_config_line")],
    )
    def test_read_errors(self, tmp_path, text, message):
        path = tmp_path / "run.conf"
        path.write_text(text)
        with pytest.raises(UsageError, match=message):
            read_config_file(path)

    def test_dotenv_syntax(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text('export law="uniform:0.1,0.5"\nseed=1 # first\nseed=2\n')
        assert read_config_file(path) == {"law": "uniform:0.1,0.5", "seed": "2"}

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_config_file(tmp_path / "absent.conf")

    def test_flags_override_file_and_file_overrides_fallbacks(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("law=uniform:0.1,0.5\nwindow=-100,100\nseed=7\nhorizon=64\njobs=2\n")
        run = load_run_config("diagnose", {"horizon": 32}, path, {"seed": 1, "jobs": 8, "tol": 1e-10})
        assert run.horizon == 32
        assert run.seed == 7
        assert run.jobs == 2
        assert run.tol == 1e-10

    def test_fallbacks_fill_missing_values_only(self):
        run = load_run_config(
            "montecarlo", {"law": "constant:0.5", "window": "-9,9", "n": "4"}, None, {"seed": None, "jobs": 3, "tol": 1e-12}
        )
        assert run.seed is None
        assert run.jobs == 3

    def test_command_mismatch(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("command=llt\n")
        with pytest.raises(UsageError, match="command_mismatch"):
            load_run_config("diagnose", {}, path)

    def test_validation_failures_become_usage_errors(self):
        with pytest.raises(UsageError, match="invalid_run_config"):
            load_run_config("diagnose", {"law": "constant:0.5", "window": "-9,9"})

    def test_unknown_flag(self):
        with pytest.raises(UsageError, match="unknown_options"):
            load_run_config("llt", {"colour": "red"})

    def test_shipped_default_config(self):
        path = Path(__file__).resolve().parents[1] / "config" / "default-run.conf"
        run = load_run_config("diagnose", {}, path)
        assert run.law == "uniform:0.1,0.5"
        assert run.window == (-8192, 8192)
        assert run.horizon == 4096
