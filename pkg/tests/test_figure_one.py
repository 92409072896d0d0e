import numpy as np
import pytest

from adapters.outbound.file_artifact_writer_adapter import FileArtifactWriterAdapter
from adapters.outbound.svg_plot_adapter import SvgPlotAdapter
from core.domain.exceptions import UsageError
from core.domain.services.figure_one import figure1
from core.use_cases.verify_local_limit_use_case import VerifyLocalLimitUseCase


def test_simple_walk_curves_coincide(constant_env):
    result = figure1(constant_env(0.5, 200), 100)
    assert result.constants["const"] == pytest.approx(1.0, rel=1e-12)
    assert result.constants["variance"] == pytest.approx(100.0, rel=1e-12)
    np.testing.assert_allclose(result.curves["heat"]["value"], result.curves["pmf"]["value"], atol=1e-14)
    assert result.curves["pmf"]["x"].iloc[0] == -50
    assert result.curves["pmf"]["x"].iloc[-1] == 50


def test_curves_share_sites(uniform_env):
    result = figure1(uniform_env(half_width=300), 200)
    xs = [list(frame["x"]) for frame in result.curves.values()]
    assert xs[0] == xs[1] == xs[2]
    assert result.curves["heat"]["value"].sum() <= 1.0 + 1e-12
    assert 0.0 < result.relative_distance < 1.0


def test_degenerate_time(constant_env):
    with pytest.raises(UsageError):
        figure1(constant_env(0.5, 50), 0)


def test_use_case_writes_curves_and_plot(uniform_env, tmp_path):
    use_case = VerifyLocalLimitUseCase(FileArtifactWriterAdapter(), SvgPlotAdapter())
    result = use_case.figure(uniform_env(half_width=200), 64, tmp_path / "fig", {"command": "figure1"})

    written = sorted(path.name for path in tmp_path.iterdir())
    assert written == ["fig.svg", "fig_gauss.csv", "fig_heat.csv", "fig_pmf.csv"]
    lines = (tmp_path / "fig_heat.csv").read_text().splitlines()
    assert lines[0] == "# command=figure1"
    assert "# curve=heat" in lines
    assert "x,value" in lines
    assert (tmp_path / "fig.svg").read_text().lstrip().startswith("<svg")
    assert result.n == 64


def test_disabled_plot_writes_csv_only(uniform_env, tmp_path):
    use_case = VerifyLocalLimitUseCase(FileArtifactWriterAdapter(), SvgPlotAdapter(enabled=False))
    use_case.figure(uniform_env(half_width=200), 16, tmp_path / "fig")
    assert not (tmp_path / "fig.svg").exists()
    assert (tmp_path / "fig_pmf.csv").exists()
