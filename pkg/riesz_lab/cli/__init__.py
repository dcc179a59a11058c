from __future__ import annotations

import click

from riesz_lab import __version__
from riesz_lab.cli.operators import dominate, modulus
from riesz_lab.cli.probes import counterexample, probe, report, verify
from riesz_lab.utils.configuration import Configuration
from riesz_lab.utils.logging_mixin import configure_logging


@click.group()
@click.version_option(version=__version__)
def cli():
    pass


def main():
    configure_logging(Configuration.RIESZ_LAB_LOG_LEVEL)
    cli.add_command(verify)
    cli.add_command(probe)
    cli.add_command(modulus)
    cli.add_command(dominate)
    cli.add_command(counterexample)
    cli.add_command(report)
    cli(max_content_width=120)


if __name__ == "__main__":
    main()
