from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from riesz_lab.operators.matrix import MatrixOp, Operator, as_matrix, operator_leq
from riesz_lab.utils.verdict import Verdict


class Monotonicity(str, Enum):
    """Claimed direction of a monotone sequence."""

    increasing = "increasing"
    decreasing = "decreasing"
    none = "none"


@dataclass(frozen=True)
class OperatorSeq:
    """A sequence k -> T_k (k >= 1) of operators sharing domain and range.

    Attributes:
        name: label used in reports
        generator: k -> MatrixOp or RankOneOp
        monotonicity_claim: the order direction the sequence is claimed to follow
        limit: optional symbolic limit, e.g. the zero operator for a sequence decreasing to 0
    """

    name: str
    generator: Callable[[int], Operator]
    monotonicity_claim: Monotonicity = Monotonicity.none
    limit: MatrixOp | None = None

    def term(self, k: int) -> MatrixOp:
        if k < 1:
            raise ValueError("Operator sequences are indexed from 1")
        return as_matrix(self.generator(k))


def operator_seq_monotone_check(
    seq: OperatorSeq, K: int, claim: Monotonicity | None = None
) -> Verdict:
    """Verify the claimed monotonicity on T_1, ..., T_K.

    Consecutive terms are compared in the operator order (T_{k} - T_{k-1} positive for an increasing
    claim). The witness of a failure is the first index k whose term breaks the claim.
    """
    if K < 2:
        raise ValueError("Monotonicity needs at least two terms")
    claim = seq.monotonicity_claim if claim is None else Monotonicity(claim)
    if claim == Monotonicity.none:
        return Verdict(holds=True, notes=("no monotonicity claimed",))
    previous = seq.term(1)
    for k in range(2, K + 1):
        current = seq.term(k)
        ordered = operator_leq(previous, current) if claim == Monotonicity.increasing else operator_leq(
            current, previous
        )
        if not ordered:
            return Verdict(holds=False, witness=k, notes=(f"{seq.name} is not {claim.value} at k={k}",))
        previous = current
    return Verdict(holds=True, notes=(f"{seq.name} is {claim.value} for k <= {K}",))
