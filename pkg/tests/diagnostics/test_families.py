from __future__ import annotations

from fractions import Fraction

import pytest

from riesz_lab.diagnostics.families import (
    FamilyKind,
    SequenceFamily,
    build_family,
    build_operator_family,
    c0_tails,
    check_order_claim,
    constant,
    geometric_diagonal,
    ramps,
    stabilizing,
    tents,
)
from riesz_lab.lattice.element import LatticeElement
from riesz_lab.operators.sequence import Monotonicity, operator_seq_monotone_check
from riesz_lab.pwl.function import tent_family
from riesz_lab.spaces.tags import SpaceTag
from riesz_lab.utils.exceptions import OrderClaimViolation, ProbePreconditionError


def test_canonical_families():
    assert tents().term(3) == tent_family(3)
    assert tents().space == SpaceTag.pwl_sup()
    assert ramps("PwlL1").space == SpaceTag.pwl_l1()
    assert c0_tails(4).term(2) == LatticeElement([0, "1/4", "1/8", "1/16"])
    assert stabilizing().term(10) == LatticeElement([1, 2])
    assert geometric_diagonal().term(2) == LatticeElement(["3/4", "3/4"])


def test_indexing():
    with pytest.raises(ValueError):
        tents().term(0)
    with pytest.raises(ValueError, match="k <= 4"):
        c0_tails(4).term(5)


@pytest.mark.parametrize(
    "factory, kwargs",
    [
        pytest.param(tents, {"space": "SeqL1"}, id="tents outside PWL"),
        pytest.param(c0_tails, {"kind": "PwlSup"}, id="tails outside coordinates"),
        pytest.param(stabilizing, {"target": (1, -1)}, id="negative target"),
        pytest.param(stabilizing, {"steps": 0}, id="no steps"),
    ],
)
def test_invalid_families(factory, kwargs):
    with pytest.raises(ValueError):
        factory(**kwargs)


def test_build_family():
    assert build_family("tents").kind == FamilyKind.tents
    fam = build_family({"name": "c0_tails", "dim": 8})
    assert fam.space == SpaceTag.seq_linf(8)
    with pytest.raises(ValueError, match="Unknown family"):
        build_family("spirals")
    with pytest.raises(ValueError, match="Bad parameters"):
        build_family({"name": "tents", "height": 2})
    with pytest.raises(ValueError):
        build_family({"dim": 8})


def test_build_operator_family():
    seq = build_operator_family({"name": "basis_projections", "dim": 3})
    assert operator_seq_monotone_check(seq, 5).holds
    alternating = build_operator_family("alternating_identity")
    assert operator_seq_monotone_check(alternating, 4).witness == 2


def test_check_order_claim():
    assert len(check_order_claim(tents(), 4, Monotonicity.decreasing)) == 4
    with pytest.raises(ProbePreconditionError, match="claims increasing"):
        check_order_claim(ramps(), 4, Monotonicity.decreasing)
    with pytest.raises(ProbePreconditionError):
        check_order_claim(tents(), 1, Monotonicity.decreasing)
    assert check_order_claim(constant([1, 1]), 3, Monotonicity.increasing)[-1] == LatticeElement([1, 1])


def test_check_order_claim_reports_first_violation():
    liar = SequenceFamily(
        name="liar",
        kind=FamilyKind.custom,
        generator=lambda k: LatticeElement([1 if k == 1 else -k]),
        order_claim=Monotonicity.increasing,
        space=SpaceTag.seq_linf(1),
    )
    with pytest.raises(OrderClaimViolation) as exc_info:
        check_order_claim(liar, 5, Monotonicity.increasing)
    assert exc_info.value.index == 2


def test_check_order_claim_rejects_members_outside_the_space():
    wrong_dim = SequenceFamily(
        name="wrong",
        kind=FamilyKind.custom,
        generator=lambda k: LatticeElement([k, k]),
        order_claim=Monotonicity.increasing,
        space=SpaceTag.seq_linf(3),
        norm_bound=Fraction(1),
    )
    with pytest.raises(ProbePreconditionError, match="does not belong"):
        check_order_claim(wrong_dim, 2, Monotonicity.increasing)
