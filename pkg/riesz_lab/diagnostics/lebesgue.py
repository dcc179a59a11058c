from __future__ import annotations

from fractions import Fraction

from riesz_lab.diagnostics.families import SequenceFamily, check_order_claim
from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.rational import dyadic, format_rational
from riesz_lab.operators.sequence import Monotonicity
from riesz_lab.pwl.function import PwlFunc, pwl_eval
from riesz_lab.spaces.boundedness import element_size
from riesz_lab.spaces.elements import element_is_positive, element_is_zero, flatten
from riesz_lab.spaces.tags import Element
from riesz_lab.utils.exceptions import ProbePreconditionError

DEFAULT_THRESHOLD = dyadic(20)


def vanishing_grid(K: int) -> tuple[Fraction, ...]:
    """The points j/K, 1 <= j <= K, of (0, 1] at which a PWL member u_K is expected to vanish."""
    return tuple(Fraction(j, K) for j in range(1, K + 1))


def _nonvanishing_points(u: Element, K: int) -> tuple[list[str], int]:
    """(labels of the grid points where u is not 0, number of points probed).

    PWL members are probed on ``vanishing_grid(K)``, coordinate members at every coordinate.
    """
    if isinstance(u, PwlFunc):
        grid = vanishing_grid(K)
        return [f"t={format_rational(t)}" for t in grid if pwl_eval(u, t) != 0], len(grid)
    coords = flatten(u).coords
    return [f"coordinate {i}" for i, c in enumerate(coords) if c != 0], len(coords)


def lebesgue_preconditions(
    fam: SequenceFamily, K: int, threshold: Fraction = DEFAULT_THRESHOLD
) -> list[Element]:
    """u_1, ..., u_K of a positive family decreasing to 0.

    A family without a declared infimum must show it on the grid: u_K vanishes at every grid point.
    """
    if threshold < 0:
        raise ProbePreconditionError("threshold must be non-negative")
    terms = check_order_claim(fam, K, Monotonicity.decreasing)
    for k, term in enumerate(terms, start=1):
        if not element_is_positive(term):
            raise ProbePreconditionError(f"Family {fam.name!r}: member {k} is not positive")
    if fam.limit is not None:
        if not element_is_zero(fam.limit):
            raise ProbePreconditionError(f"Family {fam.name!r} decreases to a nonzero infimum")
        return terms
    remaining, _ = _nonvanishing_points(terms[-1], K)
    if remaining:
        raise ProbePreconditionError(
            f"Family {fam.name!r}: u_{K} does not vanish at {remaining[0]}; "
            "declare a zero limit or probe a larger K"
        )
    return terms


def lebesgue_probe(fam: SequenceFamily, K: int, threshold: Fraction = DEFAULT_THRESHOLD) -> ProbeReport:
    """Track the norms of a positive family decreasing to 0.

    Verdict holds when norm(u_K) <= threshold, fails with the constant-norm certificate when the norms do
    not move at all for k <= K, and is inconclusive otherwise.

    Raises:
        ProbePreconditionError: wrong order claim, K < 2, a non-positive member, a declared infimum that
            is not 0, or an undeclared infimum that u_K does not reach on the grid
        OrderClaimViolation: the family is not decreasing
    """
    terms = lebesgue_preconditions(fam, K, threshold)
    tag = fam.space
    curve = [(k, element_size(term, tag)) for k, term in enumerate(terms, start=1)]
    remaining, probed = _nonvanishing_points(terms[-1], K)
    notes = [
        f"{fam.name} in {tag.label}, decreasing for k <= {K}",
        f"u_{K} vanishes at {probed - len(remaining)} of {probed} grid points",
    ]
    last = curve[-1][1]
    if last <= threshold:
        return ProbeReport(
            "lebesgue_probe",
            ProbeVerdict.holds,
            witnesses=[{"k": K, "norm": last, "threshold": threshold}],
            curve=curve,
            notes=notes,
        )
    if all(value == last for _, value in curve):
        return ProbeReport(
            "lebesgue_probe",
            ProbeVerdict.fails,
            witnesses=[{"k": K, "member": terms[-1], "norm": last}],
            curve=curve,
            notes=notes
            + [f"constant-norm certificate: norm(u_k) = {format_rational(last)} for every k <= {K}"],
        )
    notes.append(f"norm(u_{K}) = {format_rational(last)} is above the threshold {format_rational(threshold)}")
    return ProbeReport("lebesgue_probe", ProbeVerdict.inconclusive, curve=curve, notes=notes)
