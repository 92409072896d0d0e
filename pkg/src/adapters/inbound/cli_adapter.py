"""
Command-line adapter for the balanced random walk laboratory

Sub-commands: gen-env, evolve, llt, diagnose, figure1, montecarlo. Every command accepts
--config (key=value file); flags override file keys, which override defaults.
"""

import json
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
from click.core import ParameterSource

from core.domain.entities.environment import Environment
from core.ports.inbound.laboratory_service_port import LaboratoryServicePort
from infrastructure.config import LaboratoryConfig, initialize_config
from infrastructure.dependency_injection import get_container
from infrastructure.logging import SERVICE_NAME, configure_logging, get_logger, log_run_lifecycle
from .exception_handlers import with_error_handling
from .run_config import RunConfig, load_run_config

logger = get_logger(__name__)

FLOAT_FORMAT = "%.17g"


def _explicit_params(ctx: click.Context) -> Dict[str, Any]:
    """Only the options actually given on the command line"""
    return {
        name: value
        for name, value in ctx.params.items()
        if ctx.get_parameter_source(name) in (ParameterSource.COMMANDLINE, ParameterSource.ENVIRONMENT)
    }


def _fallbacks(settings: LaboratoryConfig) -> Dict[str, Any]:
    return {
        "seed": settings.numerics.default_seed,
        "sample_seed": settings.numerics.default_seed,
        "tol": settings.numerics.poisson_tol,
        "jobs": settings.execution.jobs,
    }


def _environments(service: LaboratoryServicePort, run: RunConfig) -> List[Environment]:
    if run.env:
        return [service.load_environment(path) for path in run.env]
    return [service.generate_environment(run.law, run.window, run.seed, None)]


def _header(run: RunConfig, env: Optional[Environment] = None) -> Dict[str, Any]:
    """Effective configuration plus environment provenance"""
    fields = run.header()
    if env is not None:
        fields.update({f"env_{key}": value for key, value in env.describe().items()})
    return fields


def _run(ctx: click.Context, command: str, action: Callable[[LaboratoryServicePort, RunConfig, LaboratoryConfig], None]) -> None:
    settings = initialize_config()
    configure_logging(
        level=settings.logging.level,
        json_format=settings.logging.json_format,
        log_file=settings.logging.log_file,
    )
    settings.print_status()
    flags = _explicit_params(ctx)
    config_file = flags.pop("config_file", None)
    run = load_run_config(command, flags, config_file, _fallbacks(settings))

    container = get_container()
    container.configure_outputs(run.emits("csv"), run.emits("json"), run.emits("svg"))
    service = container.get_laboratory_service()

    started = time.perf_counter()
    logger.info(f"run_starting | command=<{command}>", **log_run_lifecycle("starting", command))
    action(service, run, settings)
    logger.info(
        f"run_completed | command=<{command}>",
        **log_run_lifecycle("completed", command, duration=round(time.perf_counter() - started, 3)),
    )


def _out(settings: LaboratoryConfig, run: RunConfig) -> Optional[Path]:
    return settings.output.resolve(run.out) if run.out is not None else None


config_option = click.option("--config", "config_file", type=click.Path(dir_okay=False, path_type=Path), help="key=value run config file")
out_option = click.option("--out", type=str, help="Output path or prefix")
tol_option = click.option("--tol", type=float, help="Poisson truncation tolerance in (0, 1e-6]")
jobs_option = click.option("--jobs", type=int, help="Worker cap")
emit_option = click.option("--emit", type=str, help="Artifact kinds to write, a subset of csv,json,svg")


def env_options(multiple: bool = False):
    """--env or an inline --law/--seed/--window triple"""
    def decorator(func):
        func = click.option("--window", type=str, help="Inline environment window lo,hi")(func)
        func = click.option("--seed", type=int, help="Environment seed (falls back to BLLT_SEED)")(func)
        func = click.option("--law", type=str, help="Inline environment law, e.g. uniform:0.1,0.5")(func)
        func = click.option("--env", type=str, multiple=multiple, help="Environment file")(func)
        return func
    return decorator


@click.group(name=SERVICE_NAME)
def cli():
    """Exact numerical laboratory for balanced random walks in quenched environments"""


@cli.command("gen-env")
@click.option("--law", type=str, help="Environment law, e.g. uniform:0.1,0.5")
@click.option("--seed", type=int, help="Environment seed (falls back to BLLT_SEED)")
@click.option("--window", type=str, help="Window lo,hi")
@out_option
@config_option
@click.pass_context
@with_error_handling("generate environment")
def gen_env(ctx, **_):
    """Instantiate an environment and write it to a file"""

    def action(service, run, settings):
        env = service.generate_environment(run.law, run.window, run.seed, _out(settings, run))
        click.echo(f"{env.fingerprint} {_out(settings, run)}")

    _run(ctx, "gen-env", action)


@cli.command()
@env_options()
@click.option("--kind", type=click.Choice(["forward", "reversed_a", "reversed_b", "heatstep", "poissonized"]))
@click.option("--n", type=str, help="Step count n (time t for poissonized)")
@emit_option
@tol_option
@out_option
@config_option
@click.pass_context
@with_error_handling("evolve")
def evolve(ctx, **_):
    """Write one kernel snapshot as k,value rows"""

    def action(service, run, settings):
        env = _environments(service, run)[0]
        snapshot = service.evolve(env, run.kind, run.times[0], run.tol, _out(settings, run), _header(run, env))
        click.echo(
            f"{snapshot.kind.value} {snapshot.time_label}={snapshot.time} "
            f"sites=[{snapshot.f.lo},{snapshot.f.hi}] mass={snapshot.f.total():.17g}"
        )

    _run(ctx, "evolve", action)


@cli.command()
@env_options()
@click.option("--n", type=str, help="Comma-separated times")
@click.option("--interval", type=str, help="Compact interval a,b")
@click.option("--variant", type=click.Choice(["g", "a", "pmf", "raw", "continuous"]))
@click.option("--variance-route", is_flag=True, help="Fit sigma^2 from Var(X_n)/n instead of 2/mu")
@emit_option
@tol_option
@out_option
@config_option
@click.pass_context
@with_error_handling("verify local limit")
def llt(ctx, **_):
    """Sup-error of the local limit theorem on a compact interval"""

    def action(service, run, settings):
        env = _environments(service, run)[0]
        table = service.local_limit(
            env, run.times, run.interval, run.variant, run.variance_route, run.tol, _out(settings, run), _header(run, env)
        )
        click.echo(table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"), nl=False)

    _run(ctx, "llt", action)


@cli.command()
@env_options(multiple=True)
@click.option("--horizon", type=int, help="Diagnostics horizon N")
@tol_option
@emit_option
@jobs_option
@out_option
@config_option
@click.pass_context
@with_error_handling("run diagnostics")
def diagnose(ctx, **_):
    """Lemma checks and statistics; exit 1 when a lemma inequality fails"""

    def action(service, run, settings):
        environments = _environments(service, run)
        reports = service.diagnose(
            environments, run.horizon, _out(settings, run), run.jobs, run.tol, _header(run, environments[0] if len(environments) == 1 else None)
        )
        for report in reports:
            click.echo(f"{report.env_fingerprint} checks={len(report.records)} failed=0")

    _run(ctx, "diagnose", action)


@cli.command()
@env_options()
@click.option("--n", type=str, help="Step count n")
@emit_option
@out_option
@config_option
@click.pass_context
@with_error_handling("write figure")
def figure1(ctx, **_):
    """Walk pmf, fitted normal density and normalized a(n,.) on one plot"""

    def action(service, run, settings):
        env = _environments(service, run)[0]
        result = service.figure_one(env, run.steps, _out(settings, run), _header(run, env))
        click.echo(f"n={run.steps} relative_distance={result.relative_distance:.17g}")

    _run(ctx, "figure1", action)


@cli.command()
@env_options()
@click.option("--n", type=str, help="Step count n")
@click.option("--count", type=int, help="Number of sampled endpoints")
@click.option("--sample-seed", type=int, help="Sampling seed (defaults to the environment seed)")
@emit_option
@jobs_option
@out_option
@config_option
@click.pass_context
@with_error_handling("run monte carlo")
def montecarlo(ctx, **_):
    """Compare simulated endpoints with the exact forward pmf"""

    def action(service, run, settings):
        env = _environments(service, run)[0]
        summary = service.monte_carlo(env, run.steps, run.count, run.sample_seed, run.jobs, _out(settings, run), _header(run, env))
        click.echo(json.dumps(summary, indent=2, default=float))

    _run(ctx, "montecarlo", action)


def main() -> int:
    """Console entry point"""
    return cli(prog_name=SERVICE_NAME)
