from __future__ import annotations

import json
import re
from typing import TYPE_CHECKING, Any

import click

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.utils.configuration import Configuration

if TYPE_CHECKING:
    from click.core import Context, Parameter

_RANGE = re.compile(r"^(\d+)\s*(?:\.\.|-)\s*(\d+)$")


class InvalidOption(click.BadParameter):
    """A malformed option value; exits with the validation code 1 instead of click's usage code."""

    exit_code = 1


def validate_param_option(ctx: Context, param: Parameter, value: list[str]) -> dict[str, Any]:
    """``key=value`` pairs; values are decoded as JSON and kept as strings when they are not JSON."""
    params = {}
    for item in value:
        try:
            key, raw = item.split("=", 1)
        except ValueError:
            raise InvalidOption(f"{param.name} parameter must be in the form key=value.") from None
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


def validate_dims_option(ctx: Context, param: Parameter, value: str | None) -> list[int] | None:
    """``2..16``, ``2-16`` or a comma separated list such as ``2,4,8``."""
    if value is None:
        return None
    match = _RANGE.match(value.strip())
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise InvalidOption(f"empty range {value!r}.")
        dims = list(range(low, high + 1))
    else:
        try:
            dims = [int(d) for d in value.split(",") if d.strip()]
        except ValueError:
            raise InvalidOption(
                f"{param.name} must be a range such as 1..6 or a list such as 2,4,8."
            ) from None
    if not dims or any(d < 1 for d in dims):
        raise InvalidOption(f"{param.name} must contain positive dimensions.")
    return dims


def validate_element_option(ctx: Context, param: Parameter, value: str | None) -> LatticeElement | None:
    """A vector given as ``1,1/2,0`` or as a JSON array of rational strings."""
    if value is None:
        return None
    text = value.strip()
    try:
        coords = json.loads(text) if text.startswith("[") else [c.strip() for c in text.split(",")]
        return LatticeElement(coords)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InvalidOption(f"{param.name} must be a list of rationals: {exc}") from None


def validate_seed_option(ctx: Context, param: Parameter, value: int | None) -> int | None:
    if value is not None and not 0 <= value < 2**64:
        raise InvalidOption(f"{param.name} must be an unsigned 64-bit integer.")
    return value


seed_option = click.Option(
    ("--seed",),
    type=int,
    default=None,
    callback=validate_seed_option,
    help="Base seed. Takes precedence over RIESZ_LAB_SEED and the config file seed.",
)
config_option = click.Option(
    ("--config", "config_path"),
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="The experiment config (JSON) to run.",
)
out_option = click.Option(
    ("--out", "output"),
    type=str,
    default=None,
    help=f"Output path prefix. Defaults to the config value, then to {Configuration.RIESZ_LAB_OUTPUT!r}.",
)
format_option = click.Option(
    ("--format", "output_format"),
    type=click.Choice(["json", "md", "markdown", "both"]),
    default=None,
    help=f"Report files to write. Defaults to the config value, then to {Configuration.RIESZ_LAB_FORMAT}.",
)
approx_option = click.Option(
    ("--approx",),
    is_flag=True,
    default=False,
    show_default=True,
    help="Append decimal renderings to report tables, marked non-authoritative.",
)
jobs_option = click.Option(
    ("--jobs",),
    type=click.IntRange(min=1),
    default=Configuration.RIESZ_LAB_JOBS,
    show_default=True,
    help="Number of probes to run concurrently.",
)
stamp_option = click.Option(
    ("--stamp/--no-stamp",),
    default=Configuration.RIESZ_LAB_STAMP_MANIFEST,
    show_default=True,
    help="Record a run timestamp in the manifest, outside the hashed config.",
)
param_option = click.Option(
    ("--param", "params"),
    type=str,
    multiple=True,
    callback=validate_param_option,
    help="Probe parameter in the form key=value, the value decoded as JSON. Can be repeated.",
)
dims_option = click.Option(
    ("--dims",),
    type=str,
    default=None,
    callback=validate_dims_option,
    help="Dimensions to probe, as a range such as 1..6 or a list such as 2,4,8.",
)
x_option = click.Option(
    ("--x", "x"),
    type=str,
    default=None,
    callback=validate_element_option,
    help="A positive vector, e.g. 1,1. Prints |T|(x) from the sign-pattern oracle as well.",
)
