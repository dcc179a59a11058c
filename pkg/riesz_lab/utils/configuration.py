from __future__ import annotations

from os import getenv


def _parse_seed(raw: str | None) -> int | None:
    if raw is None or raw == "":
        return None
    return int(raw, 0)


class Configuration:
    """riesz-lab configuration.

    Every value can be overridden with the environment variable of the same name. Command line flags
    take precedence over these values, and these values take precedence over an experiment config file.
    """

    RIESZ_LAB_SEED = _parse_seed(getenv("RIESZ_LAB_SEED"))
    RIESZ_LAB_DEFAULT_SEED = 0xA11CE
    RIESZ_LAB_OUTPUT = getenv("RIESZ_LAB_OUTPUT", "riesz-lab")
    RIESZ_LAB_FORMAT = getenv("RIESZ_LAB_FORMAT", "both")
    RIESZ_LAB_CLOSURE_CAP = int(getenv("RIESZ_LAB_CLOSURE_CAP", "4096"))
    RIESZ_LAB_ORACLE_MAX_DIM = int(getenv("RIESZ_LAB_ORACLE_MAX_DIM", "20"))
    RIESZ_LAB_TRIALS = int(getenv("RIESZ_LAB_TRIALS", "200"))
    RIESZ_LAB_JOBS = int(getenv("RIESZ_LAB_JOBS", "1"))
    RIESZ_LAB_STAMP_MANIFEST = getenv("RIESZ_LAB_STAMP_MANIFEST", "false").lower() == "true"
    RIESZ_LAB_LOG_LEVEL = getenv("RIESZ_LAB_LOG_LEVEL", "WARNING")


def resolve_seed(flag: int | None = None, config_seed: int | None = None) -> int:
    """Seed precedence: command line flag, then RIESZ_LAB_SEED, then the config file, then the default."""
    for candidate in (flag, Configuration.RIESZ_LAB_SEED, config_seed):
        if candidate is not None:
            return candidate
    return Configuration.RIESZ_LAB_DEFAULT_SEED
