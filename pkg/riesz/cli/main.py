"""Command-line surface: analyze, zoo, witness, verify, harness, config."""

import functools
import logging
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable

import click
from tqdm import tqdm

from riesz.core.cover import functional_representation, verify_cover
from riesz.core.deciders import (
    decide_fordable,
    decide_pervasive,
    decide_property_P,
    decide_weakly_pervasive,
)
from riesz.core.errors import (
    ArgumentError,
    CapacityError,
    CoverConstructionError,
    ModelValidationError,
    ParseError,
    PreconditionError,
    RieszError,
)
from riesz.core.model import build_model, decide_directed, decide_pointed, decide_rdp
from riesz.core.rational import parse_rational
from riesz.core.report import DecisionReport, Property
from riesz.core.suite import ModelVerdicts, SuiteResult, check_implications, run_harness
from riesz.core.zoo import ZOO_NAMES, ZooSpec, build, chain_for
from riesz.utils.config import CONFIG_FILE, AnalysisConfig, load_config, save_config
from riesz.utils.serialize import (
    build_report,
    cover_section,
    dumps,
    dumps_model,
    loads_model,
    loads_report,
    write_atomic,
)
from riesz.utils.verify import verify_report


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_CAPACITY = 3

DEFAULT_PROPERTIES = (
    Property.PERVASIVE,
    Property.WEAKLY_PERVASIVE,
    Property.FORDABLE,
    Property.RDP,
    Property.PROPERTY_P,
)


@dataclass
class State:
    config: AnalysisConfig
    quiet: bool = False
    timing: bool = True


def exit_code_for(exc: RieszError) -> int:
    if isinstance(exc, CapacityError):
        return EXIT_CAPACITY
    if isinstance(exc, (ParseError, ModelValidationError, ArgumentError, PreconditionError)):
        return EXIT_INVALID
    return EXIT_FAILED


def guarded(func: Callable[..., Any]) -> Callable[..., Any]:
    """Turn package errors into a diagnostic on stderr and an exit code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RieszError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exit_code_for(exc))

    return wrapper


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(exc), path) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        click.echo(text, nl=False)


def _parse_properties(value: str | None) -> tuple[Property, ...]:
    if not value:
        return DEFAULT_PROPERTIES
    chosen = []
    for name in value.split(","):
        try:
            chosen.append(Property(name.strip()))
        except ValueError:
            valid = ", ".join(p.value for p in Property)
            raise ArgumentError(f"unknown property {name.strip()!r}; choose from {valid}") from None
    return tuple(chosen)


def _decide(prop: Property, model, rep, config: AnalysisConfig) -> DecisionReport:
    limits = config.limits
    if prop is Property.POINTED:
        return decide_pointed(model.cone)
    if prop is Property.DIRECTED:
        return decide_directed(model.cone)
    if prop is Property.RDP:
        return decide_rdp(model, config.rdp_attempts, config.seed, config.rdp_samples)
    if prop is Property.FORDABLE:
        return decide_fordable(rep)
    decider = {
        Property.PERVASIVE: decide_pervasive,
        Property.WEAKLY_PERVASIVE: decide_weakly_pervasive,
        Property.PROPERTY_P: decide_property_P,
    }[prop]
    return decider(rep, limits)


def _load_model(path: str, config: AnalysisConfig):
    spec = loads_model(_read(path))
    return build_model(spec, config.limits)


def _canonical_cover(model, config: AnalysisConfig):
    rep = functional_representation(model, config.limits, verify=False)
    verification = verify_cover(rep)
    if not verification.ok:
        raise CoverConstructionError(f"canonical cover failed: {verification.failure}", verification)
    return rep, verification


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help=f"Settings file (default {CONFIG_FILE}).")
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for LP-level detail.")
@click.option("--quiet", is_flag=True, help="No progress bars.")
@click.option("--no-timing", is_flag=True, help="Write time_ms = 0 so reports are byte-identical.")
@click.pass_context
def cli(ctx: click.Context, config_path: Path | None, verbose: int, quiet: bool, no_timing: bool) -> None:
    """Exact analysis of finite-dimensional pre-Riesz spaces."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    config = load_config(config_path)
    ctx.obj = State(config, quiet, config.record_timing and not no_timing)


@cli.command()
@click.argument("model_file")
@click.option("--properties", default=None, help="Comma-separated subset of the properties.")
@click.option("--out", default=None, help="Write the report here instead of stdout.")
@click.pass_obj
@guarded
def analyze(state: State, model_file: str, properties: str | None, out: str | None) -> None:
    """Decide properties of a model file ("-" reads stdin) and print a report."""
    config = state.config
    chosen = _parse_properties(properties)
    model = _load_model(model_file, config)
    rep, verification = _canonical_cover(model, config)

    results = [_decide(prop, model, rep, config) for prop in chosen]

    violations: list[Any] = []
    by_property = {r.property: r for r in results}
    if all(p in by_property for p in DEFAULT_PROPERTIES):
        suite = SuiteResult()
        check_implications(ModelVerdicts(model.name, by_property), suite)
        violations = suite.violations

    checks = {}
    chain = chain_for(model)
    if chain is not None:
        checks[model.name.split("(")[0]] = chain(model, rep)

    report = build_report(model, cover_section(rep, verification), results, checks, violations, state.timing)
    _emit(dumps(report), out)
    if violations:
        sys.exit(EXIT_FAILED)


def _parse_params(params: str | None) -> dict[str, Any]:
    parsed: dict[str, Any] = {}
    for item in filter(None, (params or "").split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise ArgumentError(f"parameter {item!r} is not key=value")
        parsed[key.strip()] = value.strip()
    return parsed


@cli.command()
@click.argument("name", type=click.Choice(ZOO_NAMES))
@click.option("--N", "N", type=int, default=None, help="Truncation size (example10, example14).")
@click.option("--M", "M", type=int, default=None, help="Tail length (example10).")
@click.option("--d", "d", type=int, default=None, help="Degree (example13).")
@click.option("--n", "n", type=int, default=None, help="Dimension (simplicial, random).")
@click.option("--rays", type=int, default=None, help="Number of rays (random).")
@click.option("--coeff-bound", type=int, default=None, help="Ray coordinate bound (random).")
@click.option("--grid", default=None, help="Comma-separated rational grid (example13, example14).")
@click.option("--seed", type=int, default=0, help="Seed (random).")
@click.option("--params", default=None, help="Extra key=value pairs, comma-separated.")
@click.option("--out", default=None, help="Write the model file here instead of stdout.")
@click.pass_obj
@guarded
def zoo(state: State, name: str, N, M, d, n, rays, coeff_bound, grid, seed: int, params, out) -> None:
    """Print the model file of a named model."""
    values = _parse_params(params)
    for key, value in (("N", N), ("M", M), ("d", d), ("n", n), ("rays", rays), ("coeff_bound", coeff_bound)):
        if value is not None:
            values[key] = value
    if grid:
        values["grid"] = [parse_rational(t, "grid") for t in grid.split(",")]
    model = build(ZooSpec(name, values, seed), state.config.limits)
    _emit(dumps_model(model.spec), out)


@cli.command()
@click.argument("model_file")
@click.option("--property", "prop", required=True, type=click.Choice([p.value for p in Property]))
@click.pass_obj
@guarded
def witness(state: State, model_file: str, prop: str) -> None:
    """Print the decision for one property with its witness."""
    model = _load_model(model_file, state.config)
    rep, _ = _canonical_cover(model, state.config)
    report = _decide(Property(prop), model, rep, state.config)
    if not state.timing:
        report = replace(report, time_ms=0)
    click.echo(dumps(report), nl=False)


@cli.command()
@click.argument("report_file")
@click.pass_obj
@guarded
def verify(state: State, report_file: str) -> None:
    """Re-check every certificate of a report with rational arithmetic only."""
    result = verify_report(loads_report(_read(report_file)))
    for issue in result.issues:
        click.echo(f"FAIL {issue}", err=True)
    click.echo(f"{result.checked} facts checked, {len(result.issues)} issue(s)")
    if not result.ok:
        sys.exit(EXIT_FAILED)


@cli.command()
@click.option("--seed", type=int, default=None, help="Harness seed (default from config).")
@click.option("--count", type=int, default=None, help="Number of random models.")
@click.option("--max-dim", type=int, default=None, help="Largest dimension.")
@click.option("--max-rays", type=int, default=None, help="Largest number of rays.")
@click.option("--workers", type=int, default=None, help="Worker processes.")
@click.option("--out", default=None, help="Write the summary here instead of stdout.")
@click.option("--candidates", "candidates_file", default=None, help="Write open-question candidates here.")
@click.pass_obj
@guarded
def harness(state: State, seed, count, max_dim, max_rays, workers, out, candidates_file) -> None:
    """Run the implication suite on seeded random models."""
    config = state.config
    overrides = {
        "harness_count": count,
        "harness_max_dim": max_dim,
        "harness_max_rays": max_rays,
        "harness_workers": workers,
    }
    config = replace(config, **{k: v for k, v in overrides.items() if v is not None})
    seed = config.seed if seed is None else seed

    with tqdm(total=config.harness_count, disable=state.quiet, file=sys.stderr, desc="models") as bar:
        def progress(current: int, total: int, name: str) -> None:
            bar.update(1)
            bar.set_postfix_str(name)

        result = run_harness(seed, config, progress)

    summary = {
        "seed": seed,
        "models": len(result.verdicts),
        "violations": result.violations,
        "candidates": result.candidates,
        "errors": result.errors,
        "verdicts": [
            {"model": row.name, **{p.value: r.verdict for p, r in row.reports.items()}}
            for row in result.verdicts
        ],
    }
    if candidates_file:
        write_atomic(candidates_file, dumps(result.candidates))
    _emit(dumps(summary), out)
    if not result.ok:
        sys.exit(EXIT_FAILED)


@cli.command("config")
@click.option("--write", is_flag=True, help="Save the effective settings to the config file.")
@click.pass_context
def config_command(ctx: click.Context, write: bool) -> None:
    """Show (or save) the effective settings."""
    state: State = ctx.obj
    click.echo(dumps(state.config), nl=False)
    if write:
        path = ctx.parent.params.get("config_path") or CONFIG_FILE
        save_config(state.config, path)
        click.echo(f"saved {path}", err=True)


def main() -> None:
    cli(prog_name="riesz")
