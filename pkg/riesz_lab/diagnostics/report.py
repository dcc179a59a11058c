from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any

from riesz_lab.lattice.rational import approx as approx_rational, format_rational
from riesz_lab.utils.serialization import canonical_dumps, to_jsonable

Curve = list[tuple[int, Fraction]]


class ProbeVerdict(str, Enum):
    """Outcome of a probe."""

    holds = "holds"
    fails = "fails"
    inconclusive = "inconclusive"


@dataclass(frozen=True)
class ProbeReport:
    """Verdict, witnesses and certificate curves emitted by a probe.

    Attributes:
        probe_name: registry name of the probe
        verdict: holds, fails or inconclusive; "fails" always comes with a witness
        witnesses: serialized elements, operators or index data certifying the verdict
        curve: the main certificate curve (parameter, exact value)
        curves: secondary curves keyed by name, sharing the parameter axis of ``curve``
        notes: provenance and scale limitations
        seed: seed the probe ran with
        config_hash: digest of the experiment config the probe belongs to
    """

    probe_name: str
    verdict: ProbeVerdict
    witnesses: list[Any] = field(default_factory=list)
    curve: Curve | None = None
    curves: dict[str, Curve] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    seed: int | None = None
    config_hash: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "verdict", ProbeVerdict(self.verdict))
        if self.verdict == ProbeVerdict.fails and not self.witnesses:
            raise ValueError(f"Probe {self.probe_name!r} reports a failure without a witness")
        object.__setattr__(self, "witnesses", to_jsonable(list(self.witnesses)))

    @property
    def holds(self) -> bool:
        return self.verdict == ProbeVerdict.holds

    def stamped(self, *, seed: int | None = None, config_hash: str | None = None) -> ProbeReport:
        return replace(
            self,
            seed=self.seed if seed is None else seed,
            config_hash=self.config_hash if config_hash is None else config_hash,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "probe_name": self.probe_name,
            "verdict": self.verdict.value,
            "witnesses": self.witnesses,
            "curve": None if self.curve is None else [[k, format_rational(v)] for k, v in self.curve],
            "curves": {
                name: [[k, format_rational(v)] for k, v in values] for name, values in self.curves.items()
            },
            "notes": list(self.notes),
            "seed": self.seed,
            "config_hash": self.config_hash,
        }

    def to_markdown(self, approx: bool = False) -> str:
        """Human-readable rendering with the curves as one table."""
        lines = [f"## {self.probe_name}", "", f"**Verdict:** {self.verdict.value}", ""]
        if self.seed is not None:
            lines.append(f"- seed: `{self.seed}`")
        if self.config_hash is not None:
            lines.append(f"- config hash: `{self.config_hash}`")
        if self.curve is not None:
            lines += ["", *_curve_table(self.curve, self.curves, approx)]
        if self.witnesses:
            lines += ["", "### Witnesses", "", "```json", canonical_dumps(self.witnesses, indent=2), "```"]
        if self.notes:
            lines += ["", "### Notes", ""] + [f"- {note}" for note in self.notes]
        return "\n".join(lines) + "\n"


def _curve_table(curve: Curve, curves: dict[str, Curve], approx: bool) -> list[str]:
    names = sorted(curves)
    lookup = {name: dict(values) for name, values in curves.items()}
    header = ["parameter", "value", *names]
    if approx:
        header.append("approx. value (non-authoritative)")
    rows = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for k, value in curve:
        cells = [str(k), format_rational(value)]
        cells += [format_rational(lookup[name][k]) if k in lookup[name] else "" for name in names]
        if approx:
            cells.append(approx_rational(value))
        rows.append("| " + " | ".join(cells) + " |")
    return rows
