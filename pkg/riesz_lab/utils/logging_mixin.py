from __future__ import annotations

import logging

import click


class LoggingMixin:
    """Give a service class its own logger and a print switch for console commands."""

    logger: logging.Logger

    def __init__(self, *args, logger_name: str | None = None, **kwargs):
        super().__init__(*args, **kwargs)
        self.logger = logging.getLogger(f"riesz_lab.{logger_name or self.__class__.__name__}")

    def log(self, msg: str, level: int = logging.INFO, should_print: bool = False):
        if should_print:
            click.echo(msg, err=level >= logging.WARNING)
        else:
            self.logger.log(level=level, msg=msg)


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
