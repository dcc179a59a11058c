from __future__ import annotations

from typing import Any


class RieszLabError(Exception):
    """Base class of every error raised by riesz-lab."""


class DimensionMismatchError(RieszLabError, ValueError):
    """Two elements or operators live in incompatible spaces."""

    def __init__(self, left: int, right: int, what: str = "elements"):
        super().__init__(f"Incompatible spaces: {what} of dimension {left} and {right}")
        self.left = left
        self.right = right


class ClosureTruncatedError(RieszLabError):
    """A finite suprema/infima closure outgrew its cap.

    Attributes:
        partial: the distinct closure elements materialized before the cap was hit
        truncated: always True, kept so that reports can serialize the flag
    """

    def __init__(self, partial: Any, cap: int):
        super().__init__(f"Closure exceeds the cap of {cap} elements")
        self.partial = partial
        self.cap = cap
        self.truncated = True


class NotPositiveError(RieszLabError, ValueError):
    """An element required to be positive has a negative coordinate."""


class OracleGuardError(RieszLabError, ValueError):
    """The sign-pattern oracle was asked to enumerate too many patterns."""


class UnsupportedTagError(RieszLabError, ValueError):
    """The requested computation is not defined for the given space tag."""


class ProbePreconditionError(RieszLabError, ValueError):
    """A probe was called with inputs violating its precondition."""


class OrderClaimViolation(ProbePreconditionError):
    """A family or operator sequence is not monotone in the claimed direction."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (first violation at index {index})")
        self.index = index


class ConfigValidationError(RieszLabError, ValueError):
    """An experiment config failed validation.

    Attributes:
        path: dotted location of the offending value, e.g. ``probes[2].params.K``
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class ProbeRuntimeError(RieszLabError):
    """A probe raised while running; the message names the probe."""

    def __init__(self, probe_name: str, cause: BaseException):
        super().__init__(f"Probe {probe_name!r} failed: {cause}")
        self.probe_name = probe_name
        self.cause = cause
