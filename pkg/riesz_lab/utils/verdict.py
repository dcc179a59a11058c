from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decidable check.

    Attributes:
        holds: whether the checked property holds
        scale: the exact scale certifying boundedness, when there is one
        witness: a counterexample or a certificate (element, index, pair, ...)
        notes: scale limitations and provenance of the verdict
    """

    holds: bool
    scale: Fraction | None = None
    witness: Any = None
    notes: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.holds
