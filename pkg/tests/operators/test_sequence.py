from __future__ import annotations

import pytest

from riesz_lab.operators.matrix import MatrixOp, basis_projection
from riesz_lab.operators.sequence import Monotonicity, OperatorSeq, operator_seq_monotone_check


def test_basis_projections_increase():
    seq = OperatorSeq(
        name="projections",
        generator=lambda k: basis_projection(min(k, 16), 16),
        monotonicity_claim=Monotonicity.increasing,
    )
    verdict = operator_seq_monotone_check(seq, 16)
    assert verdict.holds
    assert not operator_seq_monotone_check(seq, 16, Monotonicity.decreasing)


@pytest.mark.parametrize("claim", [Monotonicity.increasing, Monotonicity.decreasing, "none"])
def test_constant_sequence_is_monotone_both_ways(claim):
    seq = OperatorSeq(name="constant", generator=lambda k: MatrixOp.identity(2))
    assert operator_seq_monotone_check(seq, 5, claim).holds


def test_alternating_identity_breaks_claim_at_second_term():
    seq = OperatorSeq(
        name="alternating",
        generator=lambda k: MatrixOp.identity(2).scale(1 if k % 2 else -1),
        monotonicity_claim=Monotonicity.increasing,
    )
    verdict = operator_seq_monotone_check(seq, 8)
    assert not verdict.holds
    assert verdict.witness == 2


def test_sequence_validation():
    seq = OperatorSeq(name="constant", generator=lambda k: MatrixOp.identity(2))
    with pytest.raises(ValueError):
        operator_seq_monotone_check(seq, 1)
    with pytest.raises(ValueError):
        seq.term(0)
