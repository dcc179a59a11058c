from __future__ import annotations

from fractions import Fraction

import pytest

from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.element import LatticeElement


def test_failure_needs_a_witness():
    with pytest.raises(ValueError, match="without a witness"):
        ProbeReport("demo", ProbeVerdict.fails)


def test_verdict_accepts_plain_strings():
    report = ProbeReport("demo", "holds")
    assert report.verdict is ProbeVerdict.holds
    assert report.holds


def test_witnesses_are_serialized_exactly():
    report = ProbeReport(
        "demo", ProbeVerdict.fails, [{"x": LatticeElement(["1/3", -2]), "ratio": Fraction(3, 2), "k": 4}]
    )
    assert report.witnesses == [{"x": ["1/3", "-2"], "ratio": "3/2", "k": 4}]


def test_to_json():
    report = ProbeReport(
        "demo",
        ProbeVerdict.holds,
        curve=[(1, Fraction(1, 2)), (2, Fraction(1, 4))],
        curves={"pointwise": [(1, Fraction(1))]},
        notes=["exact"],
        seed=3,
    )
    assert report.to_json() == {
        "probe_name": "demo",
        "verdict": "holds",
        "witnesses": [],
        "curve": [[1, "1/2"], [2, "1/4"]],
        "curves": {"pointwise": [[1, "1"]]},
        "notes": ["exact"],
        "seed": 3,
        "config_hash": None,
    }


def test_stamped_keeps_existing_values():
    report = ProbeReport("demo", ProbeVerdict.holds, seed=3)
    stamped = report.stamped(config_hash="abc")
    assert stamped.seed == 3
    assert stamped.config_hash == "abc"
    assert stamped.stamped(seed=5).seed == 5


def test_to_markdown():
    report = ProbeReport(
        "demo",
        ProbeVerdict.fails,
        [{"k": 2}],
        curve=[(1, Fraction(1, 3)), (2, Fraction(1))],
        curves={"norm": [(2, Fraction(5))]},
        notes=["finite stage"],
        seed=7,
    )
    text = report.to_markdown()
    assert text.startswith("## demo\n\n**Verdict:** fails\n")
    assert "- seed: `7`" in text
    assert "| parameter | value | norm |" in text
    assert "| 1 | 1/3 |  |" in text
    assert "| 2 | 1 | 5 |" in text
    assert '"k": 2' in text
    assert "- finite stage" in text
    assert "non-authoritative" not in text

    approx = report.to_markdown(approx=True)
    assert "approx. value (non-authoritative)" in approx
    assert "| 1 | 1/3 |  | ~0.333333 |" in approx
