from __future__ import annotations

from riesz_lab.diagnostics.families import SequenceFamily, check_order_claim
from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.rational import format_rational
from riesz_lab.operators.sequence import Monotonicity
from riesz_lab.pwl.function import pwl_max_slope
from riesz_lab.spaces.boundedness import element_size
from riesz_lab.spaces.elements import element_is_positive, element_join, element_leq
from riesz_lab.spaces.tags import Element
from riesz_lab.utils.exceptions import ProbePreconditionError

PROXY_NOTE = (
    "the slope of the running suprema stands in for the missing continuous supremum: a uniformly bounded "
    "increasing family whose upper envelopes need slope >= k has no supremum among continuous functions"
)


def _running_suprema(terms: list[Element]) -> list[Element]:
    running = [terms[0]]
    for term in terms[1:]:
        running.append(element_join(running[-1], term))
    return running


def levi_preconditions(fam: SequenceFamily, K: int) -> list[Element]:
    """u_1, ..., u_K of an increasing family of positive elements."""
    terms = check_order_claim(fam, K, Monotonicity.increasing)
    for k, term in enumerate(terms, start=1):
        if not element_is_positive(term):
            raise ProbePreconditionError(f"Family {fam.name!r}: member {k} is not positive")
    return terms


def levi_probe(fam: SequenceFamily, K: int) -> ProbeReport:
    """Look for the supremum of an increasing, norm-bounded family.

    Coordinate lattices (and their products) have one as soon as the running suprema stabilize; a declared
    limit that dominates every member is accepted as the symbolic supremum. For PWL families the probe
    tracks the maximum slope of the running suprema and reports a failure certificate when slope(k) >= k
    for every k <= K while the norms stay bounded.

    Raises:
        ProbePreconditionError: wrong order claim, K < 2, a non-positive member, or a declared limit that
            is not an upper bound
        OrderClaimViolation: the family is not increasing
    """
    terms = levi_preconditions(fam, K)
    tag = fam.space
    norms = [(k, element_size(term, tag)) for k, term in enumerate(terms, start=1)]
    notes = [f"{fam.name} in {tag.label}, increasing for k <= {K}"]

    if fam.norm_bound is not None:
        over = [k for k, value in norms if value > fam.norm_bound]
        if over:
            notes.append(
                f"norm exceeds the declared bound {format_rational(fam.norm_bound)} at k={over[0]}; "
                "the bounded-set premise does not apply"
            )
            return ProbeReport("levi_probe", ProbeVerdict.inconclusive, curve=norms, notes=notes)
        notes.append(f"norms bounded by {format_rational(fam.norm_bound)}")

    running = _running_suprema(terms)
    supremum = running[-1]
    stabilized = running[-2] == supremum
    stabilized_at = next(k for k, value in enumerate(running, start=1) if value == supremum)

    if tag.is_pwl:
        slopes = [(k, pwl_max_slope(value)) for k, value in enumerate(running, start=1)]
        if stabilized:
            return ProbeReport(
                "levi_probe",
                ProbeVerdict.holds,
                witnesses=[{"supremum": supremum, "stabilized_at": stabilized_at}],
                curve=slopes,
                curves={"norm": norms},
                notes=notes,
            )
        if all(slope >= k for k, slope in slopes):
            return ProbeReport(
                "levi_probe",
                ProbeVerdict.fails,
                witnesses=[{"k": K, "running_supremum": supremum, "slope": slopes[-1][1]}],
                curve=slopes,
                curves={"norm": norms},
                notes=notes + [PROXY_NOTE],
            )
        notes.append("running suprema neither stabilize nor steepen like k")
        return ProbeReport(
            "levi_probe", ProbeVerdict.inconclusive, curve=slopes, curves={"norm": norms}, notes=notes
        )

    if stabilized:
        return ProbeReport(
            "levi_probe",
            ProbeVerdict.holds,
            witnesses=[{"supremum": supremum, "stabilized_at": stabilized_at}],
            curve=norms,
            notes=notes + [f"running suprema stabilize from k={stabilized_at}"],
        )
    if fam.limit is not None:
        if not all(element_leq(term, fam.limit) for term in terms):
            raise ProbePreconditionError(f"Family {fam.name!r}: the declared limit is not an upper bound")
        return ProbeReport(
            "levi_probe",
            ProbeVerdict.holds,
            witnesses=[{"supremum": fam.limit, "finite_stage_supremum": supremum}],
            curve=norms,
            notes=notes
            + [f"finite-stage supremum at k={K} is {supremum!r}; the limit is identified symbolically"],
        )
    notes.append(f"running suprema still grow at k={K} and no limit is declared")
    return ProbeReport("levi_probe", ProbeVerdict.inconclusive, curve=norms, notes=notes)
