from __future__ import annotations

from typing import Any

import click

from riesz_lab.cli.options import (
    InvalidOption,
    approx_option,
    config_option,
    dims_option,
    format_option,
    jobs_option,
    out_option,
    param_option,
    seed_option,
    stamp_option,
)
from riesz_lab.utils.exceptions import ConfigValidationError, ProbeRuntimeError
from riesz_lab.utils.types import NOTSET

EXIT_VALIDATION = 1
EXIT_RUNTIME = 2

output_options = [seed_option, out_option, format_option, approx_option, stamp_option]


def _or_notset(value: Any) -> Any:
    return NOTSET if value is None else value


def _run_single(
    probe_name: str,
    params: dict[str, Any],
    *,
    seed: int | None,
    output: str | None,
    output_format: str | None,
    approx: bool,
    stamp: bool,
):
    """Run one probe through the runner, print its report and write files only when --out is given."""
    from riesz_lab.runner import ExperimentConfig, OutputFormat, ProbeRunner

    ctx = click.get_current_context()
    try:
        config = ExperimentConfig.from_json({"probes": [{"name": probe_name, "params": params}]})
    except ConfigValidationError as exc:
        click.echo(f"Invalid parameters: {exc}", err=True)
        ctx.exit(EXIT_VALIDATION)
    try:
        manifest = ProbeRunner(jobs=1).run(
            config,
            seed=_or_notset(seed),
            output=_or_notset(output),
            output_format=OutputFormat.parse(output_format) if output_format else NOTSET,
            stamp=stamp,
            approx=approx,
            write=output is not None,
        )
    except ProbeRuntimeError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_RUNTIME)
    for report in manifest.reports:
        click.echo(report.to_markdown(approx=approx), nl=False)


@click.command(
    params=[
        click.Argument(("name",), required=False),
        param_option,
        dims_option,
        click.Option(("--list", "list_probes"), is_flag=True, default=False, help="List the probes."),
        *output_options,
    ],
    help="Run a single diagnostics probe and print its report.",
)
def probe(
    name: str | None,
    params: dict[str, Any],
    dims: list[int] | None,
    list_probes: bool,
    seed: int | None,
    output: str | None,
    output_format: str | None,
    approx: bool,
    stamp: bool,
):
    from riesz_lab.diagnostics.registry import PROBES

    if list_probes:
        for probe_name in sorted(PROBES):
            click.echo(f"{probe_name}: {PROBES[probe_name].summary}")
        return
    if name is None:
        click.echo("Missing argument NAME; use --list to see the probes.", err=True)
        click.get_current_context().exit(EXIT_VALIDATION)
    if dims is not None and name in PROBES:
        spec = PROBES[name]
        if "n_range" in spec.param_names:
            params["n_range"] = dims
        elif "dim" in spec.param_names and len(dims) == 1:
            params["dim"] = dims[0]
        else:
            raise InvalidOption(f"probe {name!r} does not take --dims {dims}", param_hint="'--dims'")
    _run_single(
        name, params, seed=seed, output=output, output_format=output_format, approx=approx, stamp=stamp
    )


@click.command(
    params=[click.Argument(("name",)), param_option, *output_options],
    help="Run one of the shipped counterexamples with its canonical parameters and print the certificate.",
)
def counterexample(
    name: str,
    params: dict[str, Any],
    seed: int | None,
    output: str | None,
    output_format: str | None,
    approx: bool,
    stamp: bool,
):
    from riesz_lab.diagnostics.registry import counterexample as lookup

    try:
        probe_name, probe_params = lookup(name, params)
    except KeyError as exc:
        click.echo(exc.args[0], err=True)
        click.get_current_context().exit(EXIT_VALIDATION)
    _run_single(
        probe_name,
        probe_params,
        seed=seed,
        output=output,
        output_format=output_format,
        approx=approx,
        stamp=stamp,
    )


@click.command(
    params=[config_option, jobs_option, *output_options],
    help="Run an experiment config and write the manifest and the Markdown report.",
)
def report(
    config_path: str,
    jobs: int,
    seed: int | None,
    output: str | None,
    output_format: str | None,
    approx: bool,
    stamp: bool,
):
    from riesz_lab.runner import ExperimentConfig, OutputFormat, ProbeRunner

    ctx = click.get_current_context()
    try:
        config = ExperimentConfig.load(config_path)
    except ConfigValidationError as exc:
        click.echo(f"Invalid config: {exc}", err=True)
        ctx.exit(EXIT_VALIDATION)
    try:
        ProbeRunner(jobs=jobs).run(
            config,
            seed=_or_notset(seed),
            output=_or_notset(output),
            output_format=OutputFormat.parse(output_format) if output_format else NOTSET,
            stamp=stamp,
            approx=approx,
            should_print=True,
        )
    except ProbeRuntimeError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_RUNTIME)


@click.command(
    params=[
        seed_option,
        dims_option,
        click.Option(
            ("--suite", "suites"),
            multiple=True,
            help="Invariant suite to run, can be repeated. Defaults to every suite.",
        ),
        approx_option,
    ],
    help="Run the invariant suites: lattice laws, closures, the modulus oracle, PWL laws and solidity.",
)
def verify(seed: int | None, dims: list[int] | None, suites: tuple[str, ...], approx: bool):
    from riesz_lab.diagnostics.invariants import InvariantSuite

    ctx = click.get_current_context()
    suite = InvariantSuite(seed=_or_notset(seed), max_dim=max(dims) if dims else 6)
    try:
        reports = suite.run(list(suites) or None, should_print=True)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_VALIDATION)
    failed = [r for r in reports if not r.holds]
    for failure in failed:
        click.echo(failure.to_markdown(approx=approx), nl=False)
    if failed:
        ctx.exit(EXIT_RUNTIME)
