import json

import pytest
from click.testing import CliRunner

from adapters.inbound.cli_adapter import cli
from core.domain.services import diagnostics

INLINE_SSRW = ["--law", "constant:0.5", "--window=-300,300"]


@pytest.fixture
def runner(clean_settings):
    return CliRunner()


@pytest.fixture
def env_file(runner, clean_settings):
    result = runner.invoke(cli, ["gen-env", "--law", "uniform:0.1,0.5", "--seed", "7", "--window=-60,60", "--out", "env.txt"])
    assert result.exit_code == 0, result.output
    return clean_settings / "env.txt"


def test_gen_env_reports_fingerprint_and_path(runner, env_file):
    result = runner.invoke(cli, ["gen-env", "--law", "uniform:0.1,0.5", "--seed", "7", "--window=-60,60", "--out", "again.txt"])
    assert result.exit_code == 0
    fingerprint, path = result.stdout.split()
    assert path == "again.txt"
    assert f"# fingerprint={fingerprint}" in env_file.read_text().splitlines()
    assert env_file.read_bytes() == (env_file.parent / "again.txt").read_bytes()


def test_gen_env_seed_falls_back_to_environment(runner, clean_settings, monkeypatch):
    monkeypatch.setenv("BLLT_SEED", "5")
    result = runner.invoke(cli, ["gen-env", "--law", "uniform:0.1,0.5", "--window=-5,5", "--out", "env.txt"])
    assert result.exit_code == 0
    assert "seed=5" in (clean_settings / "env.txt").read_text().splitlines()


def test_evolve_is_reproducible(runner, env_file, clean_settings):
    args = ["evolve", "--env", "env.txt", "--kind", "reversed_a", "--n", "10", "--out", "a.csv"]
    first = runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    content = (clean_settings / "a.csv").read_bytes()
    second = runner.invoke(cli, args)
    assert second.exit_code == 0
    assert (clean_settings / "a.csv").read_bytes() == content
    assert first.stdout == second.stdout
    assert first.stdout.startswith("reversed_a n=10 ")

    lines = content.decode().splitlines()
    assert "# env_generator=PCG64" in lines
    assert "# kind=reversed_a" in lines
    assert "k,value" in lines


def test_evolve_poissonized_accepts_real_time(runner):
    result = runner.invoke(cli, ["evolve", *INLINE_SSRW, "--kind", "poissonized", "--n", "2.5", "--tol", "1e-10"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("poissonized t=2.5 ")


def test_llt_prints_table(runner):
    result = runner.invoke(cli, ["llt", *INLINE_SSRW, "--n", "16,64", "--variant", "g"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "n,sup_error"
    assert [line.split(",")[0] for line in lines[1:]] == ["16", "64"]


def test_llt_writes_table_and_profile(runner, clean_settings):
    result = runner.invoke(cli, ["llt", *INLINE_SSRW, "--n", "16,64", "--out", "llt.csv"])
    assert result.exit_code == 0, result.output
    assert (clean_settings / "llt.csv").exists()
    assert (clean_settings / "llt_profile.csv").exists()


def test_diagnose_passes(runner, env_file, clean_settings):
    result = runner.invoke(cli, ["diagnose", "--env", "env.txt", "--horizon", "32", "--out", "report.json"])
    assert result.exit_code == 0, result.output
    assert result.stdout.strip().endswith("failed=0")
    report = json.loads((clean_settings / "report.json").read_text())
    assert report["passed"] is True
    assert report["config"]["horizon"] == 32


def test_diagnose_exits_one_on_lemma_violation(runner, env_file, monkeypatch):
    monkeypatch.setattr(diagnostics, "MONOTONE_SLACK", -1.0)
    result = runner.invoke(cli, ["diagnose", "--env", "env.txt", "--horizon", "32"])
    assert result.exit_code == 1
    assert "gradient_monotonicity" in result.stderr


def test_diagnose_from_config_file(runner, clean_settings):
    (clean_settings / "run.conf").write_text("law=constant:0.25\nwindow=-80,80\nhorizon=32\nemit=csv\nout=report.json\n")
    result = runner.invoke(cli, ["diagnose", "--config", "run.conf"])
    assert result.exit_code == 0, result.output
    assert not (clean_settings / "report.json").exists()


def test_figure1_writes_curves_and_plot(runner, clean_settings):
    result = runner.invoke(cli, ["figure1", *INLINE_SSRW, "--n", "64", "--out", "fig"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("n=64 relative_distance=")
    assert sorted(path.name for path in clean_settings.glob("fig*")) == ["fig.svg", "fig_gauss.csv", "fig_heat.csv", "fig_pmf.csv"]


def test_figure1_emit_filter(runner, clean_settings):
    result = runner.invoke(cli, ["figure1", *INLINE_SSRW, "--n", "16", "--out", "fig", "--emit", "csv"])
    assert result.exit_code == 0, result.output
    assert not (clean_settings / "fig.svg").exists()


def test_montecarlo_prints_summary(runner):
    result = runner.invoke(
        cli, ["montecarlo", "--law", "uniform:0.1,0.5", "--seed", "3", "--window=-40,40", "--n", "16", "--count", "2000"]
    )
    assert result.exit_code == 0, result.output
    summary = json.loads(result.stdout)
    assert summary["sampling_seed"] == 3
    assert summary["count"] == 2000
    assert 0.0 <= summary["total_variation"] <= 1.0


@pytest.mark.parametrize(
    "args",
    [
        ["llt", "--law", "gamma:1", "--window=-10,10", "--n", "4"],
        ["llt", *INLINE_SSRW],
        ["evolve", *INLINE_SSRW, "--n", "2.5"],
        ["diagnose", *INLINE_SSRW, "--horizon", "32", "--tol", "0.1"],
        ["llt", "--law", "constant:0.5", "--window=-10,10", "--n", "64"],
    ],
)
def test_usage_errors_exit_two(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2
    assert "error:" in result.stderr


def test_unknown_config_key_exits_two(runner, clean_settings):
    (clean_settings / "run.conf").write_text("colour=red\n")
    result = runner.invoke(cli, ["llt", "--config", "run.conf"])
    assert result.exit_code == 2
    assert "unknown_config_key" in result.stderr


def test_missing_environment_file_exits_three(runner):
    result = runner.invoke(cli, ["llt", "--env", "absent.txt", "--n", "4"])
    assert result.exit_code == 3


def test_invalid_settings_exit_two(runner, monkeypatch):
    monkeypatch.setenv("BLLT_JOBS", "0")
    result = runner.invoke(cli, ["llt", *INLINE_SSRW, "--n", "4"])
    assert result.exit_code == 2


def test_unexpected_failure_is_not_reported_as_io(runner, env_file, monkeypatch):
    def broken(*args, **kwargs):
        return 1 / 0

    monkeypatch.setattr(diagnostics, "gradient_monotonicity", broken)
    result = runner.invoke(cli, ["diagnose", "--env", "env.txt", "--horizon", "32"])
    assert result.exit_code == 4
    assert "error: division by zero" in result.stderr


def test_montecarlo_sampling_seed_sources(runner, env_file, monkeypatch):
    args = ["montecarlo", "--env", "env.txt", "--n", "8", "--count", "500"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["sampling_seed"] == 7

    monkeypatch.setenv("BLLT_SEED", "9")
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["sampling_seed"] == 9

    result = runner.invoke(cli, [*args, "--sample-seed", "2"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["sampling_seed"] == 2
