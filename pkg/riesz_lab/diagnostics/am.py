from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.element import LatticeElement
from riesz_lab.lattice.rational import format_rational
from riesz_lab.pwl.function import disjoint_tents
from riesz_lab.spaces.boundedness import order_bound
from riesz_lab.spaces.elements import (
    element_is_positive,
    element_is_zero,
    element_join,
    element_sup,
    element_sup_closure,
)
from riesz_lab.spaces.norms import into_unit_ball, norm
from riesz_lab.spaces.tags import Element, SpaceKind, SpaceTag
from riesz_lab.utils.configuration import Configuration
from riesz_lab.utils.exceptions import NotPositiveError, ProbePreconditionError, UnsupportedTagError
from riesz_lab.utils.sampling import RationalSampler
from riesz_lab.utils.types import NOTSET, ArgNotSet

logger = logging.getLogger("riesz_lab.diagnostics.am")

NORM_FAMILY_KINDS = (SpaceKind.SeqL1, SpaceKind.SeqLInf, SpaceKind.PwlSup, SpaceKind.PwlL1)


@dataclass(frozen=True)
class SamplingSpec:
    """How random finite sets are drawn.

    Attributes:
        trials: number of random sets per parameter value
        set_size: number of elements of each random set
        seed: sampler seed
    """

    trials: int = 200
    set_size: int = 3
    seed: int = Configuration.RIESZ_LAB_DEFAULT_SEED

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        if self.set_size < 1:
            raise ValueError("set_size must be at least 1")


def am_ratio(x: Element, y: Element, tag: SpaceTag) -> Fraction:
    """norm(x v y) / max(norm(x), norm(y)) for positive x, y, not both zero."""
    if not (element_is_positive(x) and element_is_positive(y)):
        raise NotPositiveError("am_ratio needs positive elements")
    denominator = max(norm(x, tag), norm(y, tag))
    if denominator == 0:
        raise ProbePreconditionError("am_ratio is undefined when both elements are zero")
    return norm(element_join(x, y), tag) / denominator


def _require_norm_tag(tag: SpaceTag) -> None:
    if tag.is_product:
        raise UnsupportedTagError(f"{tag.label} is a product; use product_preservation_check")


def canonical_pair(tag: SpaceTag) -> tuple[Element, Element] | None:
    """Two disjoint positive unit vectors: e_0, e_1 for coordinate lattices, disjoint tents for PWL."""
    if tag.is_pwl:
        return tuple(into_unit_ball(f, tag) for f in disjoint_tents(2))
    if tag.dim >= 2:
        return LatticeElement.basis(0, tag.dim), LatticeElement.basis(1, tag.dim)
    return None


def am_identity_check(tag: SpaceTag, trials: int | ArgNotSet = NOTSET, seed: int = 0) -> ProbeReport:
    """Check norm(x v y) == max(norm(x), norm(y)) exactly on positive pairs.

    The canonical disjoint pair and a diagonal pair (x, x) always come first; ``trials`` random positive
    pairs follow. The first pair with a ratio other than 1 is the failure witness.
    """
    _require_norm_tag(tag)
    if trials is NOTSET:
        trials = Configuration.RIESZ_LAB_TRIALS
    sampler = RationalSampler(seed)

    def pairs() -> Iterable[tuple[str, Element, Element]]:
        pair = canonical_pair(tag)
        if pair is not None:
            yield "canonical", pair[0], pair[1]
        x = sampler.sample(tag, positive=True)
        if not element_is_zero(x):
            yield "diagonal", x, x
        for trial in range(trials):
            x, y = sampler.sample(tag, positive=True), sampler.sample(tag, positive=True)
            if element_is_zero(x) and element_is_zero(y):
                continue
            yield f"trial {trial}", x, y

    checked = 0
    largest = Fraction(1)
    for label, x, y in pairs():
        ratio = am_ratio(x, y, tag)
        checked += 1
        largest = max(largest, ratio)
        if ratio != 1:
            return ProbeReport(
                probe_name="am_identity_check",
                verdict=ProbeVerdict.fails,
                witnesses=[{"pair": label, "x": x, "y": y, "ratio": ratio}],
                notes=[f"{tag.label}: norm(x v y) = {format_rational(ratio)} * max(norm(x), norm(y))"],
                seed=seed,
            )
    return ProbeReport(
        probe_name="am_identity_check",
        verdict=ProbeVerdict.holds,
        notes=[f"{tag.label}: ratio exactly 1 on {checked} positive pairs"],
        seed=seed,
    )


def _family_tag(kind: SpaceKind, n: int) -> SpaceTag:
    if kind in (SpaceKind.SeqL1, SpaceKind.SeqLInf):
        return SpaceTag(kind, n)
    return SpaceTag(kind)


def canonical_defect_set(tag: SpaceTag, n: int) -> list[Element]:
    """n disjoint positive unit vectors: the basis of an n-dimensional lattice, or n disjoint tents."""
    if tag.is_pwl:
        return [into_unit_ball(f, tag) for f in disjoint_tents(n)]
    return [LatticeElement.basis(i, n) for i in range(n)]


def exhaustive_ball_set(tag: SpaceTag) -> list[LatticeElement]:
    """Every vector of {-1, 0, 1}^n lying in the closed unit ball of a coordinate tag."""
    vectors = (LatticeElement(v) for v in itertools.product((-1, 0, 1), repeat=tag.dim))
    return [v for v in vectors if norm(v, tag) <= 1]


def _closure_defect(B: Sequence[Element], tag: SpaceTag) -> Fraction:
    return max(norm(z, tag) for z in element_sup_closure(B))


def am_defect_curve(
    kind: SpaceKind | str,
    n_range: Sequence[int],
    sample: SamplingSpec | None = None,
) -> ProbeReport:
    """Defect of the finite-suprema closure of unit-ball sets, as n grows.

    For each n, defect(n) is the largest norm in B^v over the canonical set of n disjoint unit vectors
    and ``sample.trials`` random sets in the unit ball (plus every {-1, 0, 1} vector of the ball when
    n <= 3). The canonical set is positive, so its closure peaks at its supremum.

    Verdict: holds when the curve is identically 1; fails when it strictly increases across n_range (the
    canonical set at the largest n is the witness); inconclusive otherwise.
    """
    kind = SpaceKind(kind)
    if kind not in NORM_FAMILY_KINDS:
        raise UnsupportedTagError(f"am_defect_curve runs on {', '.join(k.value for k in NORM_FAMILY_KINDS)}")
    n_values = sorted(set(n_range))
    if not n_values or n_values[0] < 1:
        raise ValueError("n_range must contain positive integers")
    sample = sample or SamplingSpec()
    sampler = RationalSampler(sample.seed)

    curve: list[tuple[int, Fraction]] = []
    canonical: list[tuple[int, list[Element], Element, Fraction]] = []
    for n in n_values:
        tag = _family_tag(kind, n)
        B = canonical_defect_set(tag, n)
        top = element_sup(B)
        defect = norm(top, tag)
        canonical.append((n, B, top, defect))
        if tag.is_coordinate and n <= 3:
            defect = max(defect, _closure_defect(exhaustive_ball_set(tag), tag))
        for _ in range(sample.trials):
            random_set = [into_unit_ball(sampler.sample(tag), tag) for _ in range(sample.set_size)]
            defect = max(defect, _closure_defect(random_set, tag))
        logger.debug("am_defect_curve %s n=%d defect=%s", kind.value, n, defect)
        curve.append((n, defect))

    defects = [d for _, d in curve]
    notes = [
        f"{kind.value}: {sample.trials} random sets of size {sample.set_size} per n, seed {sample.seed}",
        "the curve certifies growth at the probed n only; unboundedness of B^v is read off its trend",
    ]
    if all(d == 1 for d in defects):
        verdict, witnesses = ProbeVerdict.holds, []
    elif len(defects) >= 2 and all(a < b for a, b in zip(defects, defects[1:])):
        n, B, top, defect = canonical[-1]
        verdict = ProbeVerdict.fails
        witnesses = [{"n": n, "set": B, "supremum": top, "defect": defect}]
    else:
        verdict, witnesses = ProbeVerdict.inconclusive, []
        notes.append("defect exceeds 1 without increasing across the probed n")
    return ProbeReport(
        probe_name="am_defect_curve",
        verdict=verdict,
        witnesses=witnesses,
        curve=curve,
        notes=notes,
        seed=sample.seed,
    )


def order_bound_curve(kind: SpaceKind | str, n_range: Sequence[int]) -> ProbeReport:
    """Norm of the least order bound of {+-e_0, ..., +-e_(n-1)} as n grows.

    In each fixed dimension norm-bounded and order-bounded sets coincide; the curve records what the
    order bound of the unit-ball extreme set costs: 1 for SeqLInf, n for SeqL1.
    """
    kind = SpaceKind(kind)
    if kind not in (SpaceKind.SeqL1, SpaceKind.SeqLInf):
        raise UnsupportedTagError("order_bound_curve runs on SeqL1 and SeqLInf")
    n_values = sorted(set(n_range))
    if not n_values or n_values[0] < 1:
        raise ValueError("n_range must contain positive integers")
    curve = []
    bounds = {}
    for n in n_values:
        tag = SpaceTag(kind, n)
        extreme = [LatticeElement.basis(i, n).scale(s) for i in range(n) for s in (1, -1)]
        bounds[n] = order_bound(extreme)
        curve.append((n, norm(bounds[n], tag)))
    values = [v for _, v in curve]
    notes = ["extreme set {+-e_i} of the unit ball; its least order bound is (1, ..., 1)"]
    if all(v == values[0] for v in values):
        return ProbeReport("order_bound_curve", ProbeVerdict.holds, curve=curve, notes=notes)
    n = n_values[-1]
    return ProbeReport(
        "order_bound_curve",
        ProbeVerdict.fails,
        witnesses=[{"n": n, "order_bound": bounds[n], "norm": curve[-1][1]}],
        curve=curve,
        notes=notes + ["order bounds of the unit ball grow with the dimension"],
    )
