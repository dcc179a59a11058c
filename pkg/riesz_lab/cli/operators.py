from __future__ import annotations

import json

import click

from riesz_lab.cli.options import x_option
from riesz_lab.cli.probes import EXIT_RUNTIME, EXIT_VALIDATION
from riesz_lab.lattice.element import LatticeElement
from riesz_lab.lattice.rational import format_rational
from riesz_lab.operators.matrix import MatrixOp
from riesz_lab.spaces.tags import SpaceKind, SpaceTag


def format_matrix(T: MatrixOp) -> str:
    return "[" + ", ".join("[" + ", ".join(format_rational(a) for a in row) + "]" for row in T.entries) + "]"


def load_matrix(path: str) -> MatrixOp:
    """A MatrixOp from a JSON file: a bare 2-D array or ``{"entries", "domain", "range"}``."""
    try:
        with open(path, encoding="utf-8") as f:
            return MatrixOp.from_json(json.load(f))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        click.echo(f"Cannot parse {path} as an operator: {exc}", err=True)
        click.get_current_context().exit(EXIT_VALIDATION)


matrix_argument = click.Path(exists=True, dir_okay=False)


@click.command(
    params=[click.Argument(("matrix_file",), type=matrix_argument), x_option],
    help="Print the modulus |T| of an operator, and |T|(x) from the sign-pattern oracle when --x is given.",
)
def modulus(matrix_file: str, x: LatticeElement | None):
    from riesz_lab.operators.matrix import apply, modulus_matrix, modulus_rk

    ctx = click.get_current_context()
    T = load_matrix(matrix_file)
    closed_form = modulus_matrix(T)
    click.echo(format_matrix(closed_form))
    if x is None:
        return
    try:
        oracle = modulus_rk(T, x)
        expected = apply(closed_form, x)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_VALIDATION)
    click.echo(f"|T|(x) = {oracle!r}")
    if oracle != expected:
        click.echo(f"oracle disagrees: the modulus matrix gives {expected!r}", err=True)
        ctx.exit(EXIT_RUNTIME)
    click.echo("oracle agrees")


@click.command(
    params=[
        click.Argument(("s_file",), type=matrix_argument),
        click.Argument(("t_file",), type=matrix_argument),
    ],
    help="Decide whether |T| <= |S| and compare the induced l1 and l-inf norms.",
)
def dominate(s_file: str, t_file: str):
    from riesz_lab.operators.matrix import domination_witness, induced_norm

    ctx = click.get_current_context()
    S, T = load_matrix(s_file), load_matrix(t_file)
    try:
        witness = domination_witness(S, T)
    except ValueError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_VALIDATION)
    if witness is None:
        click.echo("S dominates T")
    else:
        i, j = witness
        click.echo(f"S does not dominate T: |T| exceeds |S| at entry ({i}, {j})")
    m, n = S.shape
    for kind in (SpaceKind.SeqL1, SpaceKind.SeqLInf):
        norm_s = induced_norm(S.with_tags(SpaceTag(kind, n), SpaceTag(kind, m)))
        norm_t = induced_norm(T.with_tags(SpaceTag(kind, n), SpaceTag(kind, m)))
        click.echo(f"{kind.value}: ||S|| = {format_rational(norm_s)}, ||T|| = {format_rational(norm_t)}")
