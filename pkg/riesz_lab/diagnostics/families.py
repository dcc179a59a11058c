from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.lattice.rational import RationalLike, dyadic, to_rational
from riesz_lab.operators.matrix import MatrixOp, basis_projection
from riesz_lab.operators.sequence import Monotonicity, OperatorSeq
from riesz_lab.pwl.function import PwlFunc, ramp_family, tent_family
from riesz_lab.spaces.elements import element_leq
from riesz_lab.spaces.tags import Element, SpaceKind, SpaceTag
from riesz_lab.utils.exceptions import OrderClaimViolation, ProbePreconditionError


class FamilyKind(str, Enum):
    tents = "tents"
    ramps = "ramps"
    c0_tails = "c0_tails"
    custom = "custom"


@dataclass(frozen=True)
class SequenceFamily:
    """A sequence k -> u_k (k >= 1) in a fixed space, with the order direction it claims.

    Attributes:
        name: label used in reports
        kind: tents, ramps and c0_tails are the shipped canonical families
        generator: k -> element of ``space``
        order_claim: increasing, decreasing or none
        space: tag every member conforms to
        limit: the supremum (increasing) or infimum (decreasing) when it is known in closed form
        norm_bound: a declared bound on the norms of the members
        k_max: the generator is defined for 1 <= k <= k_max only
    """

    name: str
    kind: FamilyKind
    generator: Callable[[int], Element]
    order_claim: Monotonicity
    space: SpaceTag
    limit: Element | None = None
    norm_bound: Fraction | None = None
    k_max: int | None = None

    def term(self, k: int) -> Element:
        if k < 1:
            raise ValueError("Families are indexed from 1")
        if self.k_max is not None and k > self.k_max:
            raise ValueError(f"Family {self.name!r} is only defined for k <= {self.k_max}")
        return self.generator(k)

    def terms(self, K: int) -> list[Element]:
        return [self.term(k) for k in range(1, K + 1)]


def _pwl_space(space: SpaceTag | str | None) -> SpaceTag:
    if space is None:
        return SpaceTag.pwl_sup()
    tag = space if isinstance(space, SpaceTag) else SpaceTag(SpaceKind(space))
    if not tag.is_pwl:
        raise ValueError(f"{tag.label} is not a space of piecewise linear functions")
    return tag


def _coordinate_space(dim: int, kind: SpaceKind | str = SpaceKind.SeqLInf) -> SpaceTag:
    kind = SpaceKind(kind)
    if kind not in (SpaceKind.SeqL1, SpaceKind.SeqLInf):
        raise ValueError(f"Expected SeqL1 or SeqLInf, got {kind.value}")
    return SpaceTag(kind, dim)


def tents(space: SpaceTag | str | None = None) -> SequenceFamily:
    """Tents of height 1 at t=0 shrinking to [0, 1/k]: decreasing, sup norm stuck at 1."""
    return SequenceFamily(
        name="tents",
        kind=FamilyKind.tents,
        generator=tent_family,
        order_claim=Monotonicity.decreasing,
        space=_pwl_space(space),
        norm_bound=Fraction(1),
    )


def ramps(space: SpaceTag | str | None = None) -> SequenceFamily:
    """Ramps reaching 1 at t=1/k: increasing and bounded by 1, with slope k."""
    return SequenceFamily(
        name="ramps",
        kind=FamilyKind.ramps,
        generator=ramp_family,
        order_claim=Monotonicity.increasing,
        space=_pwl_space(space),
        norm_bound=Fraction(1),
    )


def c0_tails(dim: int = 64, kind: SpaceKind | str = SpaceKind.SeqLInf) -> SequenceFamily:
    """(u_k)_i = 2^-i for i >= k (1-based coordinates), else 0; decreasing to 0."""
    space = _coordinate_space(dim, kind)

    def generator(k: int) -> LatticeElement:
        return LatticeElement(dyadic(i) if i >= k else 0 for i in range(1, dim + 1))

    return SequenceFamily(
        name="c0_tails",
        kind=FamilyKind.c0_tails,
        generator=generator,
        order_claim=Monotonicity.decreasing,
        space=space,
        limit=LatticeElement.zeros(dim),
        norm_bound=Fraction(1, 2),
        k_max=dim,
    )


def stabilizing(target: Iterable[RationalLike] = (1, 2), steps: int = 3) -> SequenceFamily:
    """y_k = min(k, steps)/steps * target: increasing for a positive target, equal to it from k = steps on."""
    target = LatticeElement(target)
    if not target.is_positive():
        raise ValueError("A stabilizing family needs a positive target")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    return SequenceFamily(
        name="stabilizing",
        kind=FamilyKind.custom,
        generator=lambda k: target.scale(Fraction(min(k, steps), steps)),
        order_claim=Monotonicity.increasing,
        space=SpaceTag.seq_linf(target.dim),
        limit=target,
    )


def geometric_diagonal(dim: int = 2) -> SequenceFamily:
    """(1 - 2^-k) * (1, ..., 1): increasing to the all-ones vector without reaching it."""
    ones = LatticeElement.ones(dim)
    return SequenceFamily(
        name="geometric_diagonal",
        kind=FamilyKind.custom,
        generator=lambda k: ones.scale(1 - dyadic(k)),
        order_claim=Monotonicity.increasing,
        space=SpaceTag.seq_linf(dim),
        limit=ones,
        norm_bound=Fraction(1),
    )


def constant(
    value: Iterable[RationalLike] = (1, 1), claim: Monotonicity | str = Monotonicity.increasing
) -> SequenceFamily:
    value = LatticeElement(value)
    return SequenceFamily(
        name="constant",
        kind=FamilyKind.custom,
        generator=lambda k: value,
        order_claim=Monotonicity(claim),
        space=SpaceTag.seq_linf(value.dim),
        limit=value,
    )


def zero(dim: int = 2) -> SequenceFamily:
    return constant([0] * dim, Monotonicity.decreasing)


def pwl_constant(value: RationalLike = 1, space: SpaceTag | str | None = None) -> SequenceFamily:
    f = PwlFunc.constant(value)
    return SequenceFamily(
        name="pwl_constant",
        kind=FamilyKind.custom,
        generator=lambda k: f,
        order_claim=Monotonicity.increasing,
        space=_pwl_space(space),
        limit=f,
    )


FAMILIES: dict[str, Callable[..., SequenceFamily]] = {
    "tents": tents,
    "ramps": ramps,
    "c0_tails": c0_tails,
    "stabilizing": stabilizing,
    "geometric_diagonal": geometric_diagonal,
    "constant": constant,
    "zero": zero,
    "pwl_constant": pwl_constant,
}


def scaled_identity(dim: int = 4, kind: SpaceKind | str = SpaceKind.SeqLInf) -> OperatorSeq:
    """2^-k * I, decreasing to 0."""
    tag = _coordinate_space(dim, kind)
    return OperatorSeq(
        name="scaled_identity",
        generator=lambda k: MatrixOp.identity(dim, tag).scale(dyadic(k)),
        monotonicity_claim=Monotonicity.decreasing,
        limit=MatrixOp.zero(dim, dim).with_tags(tag, tag),
    )


def diagonal_mixture(dim: int = 4, kind: SpaceKind | str = SpaceKind.SeqLInf) -> OperatorSeq:
    """diag(2^-k, 2^-2k, ..., 0, ..., 0): the first half of the diagonal decays at growing rates."""
    tag = _coordinate_space(dim, kind)
    active = max(1, dim // 2)

    def generator(k: int) -> MatrixOp:
        return MatrixOp.diagonal([dyadic(k * (i + 1)) if i < active else 0 for i in range(dim)], tag)

    return OperatorSeq(
        name="diagonal_mixture",
        generator=generator,
        monotonicity_claim=Monotonicity.decreasing,
        limit=MatrixOp.zero(dim, dim).with_tags(tag, tag),
    )


def constant_operator(
    dim: int = 2, value: RationalLike = 1, claim: Monotonicity | str = Monotonicity.decreasing
) -> OperatorSeq:
    """value * I for every k."""
    value = to_rational(value)
    return OperatorSeq(
        name="constant",
        generator=lambda k: MatrixOp.identity(dim).scale(value),
        monotonicity_claim=Monotonicity(claim),
    )


def basis_projections(dim: int = 4) -> OperatorSeq:
    """P_min(k, dim), increasing to the identity."""
    return OperatorSeq(
        name="basis_projections",
        generator=lambda k: basis_projection(min(k, dim), dim),
        monotonicity_claim=Monotonicity.increasing,
        limit=MatrixOp.identity(dim),
    )


def alternating_identity(dim: int = 2) -> OperatorSeq:
    """(-1)^(k+1) * I, claimed increasing; breaks the claim at k = 2."""
    return OperatorSeq(
        name="alternating_identity",
        generator=lambda k: MatrixOp.identity(dim).scale(1 if k % 2 else -1),
        monotonicity_claim=Monotonicity.increasing,
    )


OPERATOR_FAMILIES: dict[str, Callable[..., OperatorSeq]] = {
    "scaled_identity": scaled_identity,
    "diagonal_mixture": diagonal_mixture,
    "constant": constant_operator,
    "basis_projections": basis_projections,
    "alternating_identity": alternating_identity,
}


def _build(registry: Mapping[str, Callable[..., Any]], spec: str | Mapping[str, Any], what: str):
    if isinstance(spec, str):
        name, params = spec, {}
    elif isinstance(spec, Mapping) and "name" in spec:
        name, params = spec["name"], {k: v for k, v in spec.items() if k != "name"}
    else:
        raise ValueError(f"A {what} is a name or an object with a 'name' key")
    if name not in registry:
        raise ValueError(f"Unknown {what} {name!r}; expected one of {', '.join(sorted(registry))}")
    try:
        return registry[name](**params)
    except TypeError as exc:
        raise ValueError(f"Bad parameters for {what} {name!r}: {exc}") from None


def build_family(spec: str | Mapping[str, Any]) -> SequenceFamily:
    """Build a family from ``"tents"`` or ``{"name": "c0_tails", "dim": 32}``."""
    return _build(FAMILIES, spec, "family")


def build_operator_family(spec: str | Mapping[str, Any]) -> OperatorSeq:
    return _build(OPERATOR_FAMILIES, spec, "operator family")


def check_order_claim(fam: SequenceFamily, K: int, expected: Monotonicity) -> list[Element]:
    """u_1, ..., u_K after checking that ``fam`` claims and follows the ``expected`` direction.

    Raises:
        ProbePreconditionError: the family claims another direction, K < 2, or a member lies outside
            the family's space
        OrderClaimViolation: consecutive members break the claim; carries the first violating k
    """
    if fam.order_claim != expected:
        raise ProbePreconditionError(
            f"Family {fam.name!r} claims {fam.order_claim.value}, the probe needs {expected.value}"
        )
    if K < 2:
        raise ProbePreconditionError("K must be at least 2")
    terms = fam.terms(K)
    for k, term in enumerate(terms, start=1):
        if not fam.space.conforms(term):
            raise ProbePreconditionError(
                f"Family {fam.name!r}: member {k} does not belong to {fam.space.label}"
            )
    for k in range(2, K + 1):
        previous, current = terms[k - 2], terms[k - 1]
        ordered = (
            element_leq(previous, current)
            if expected == Monotonicity.increasing
            else element_leq(current, previous)
        )
        if not ordered:
            raise OrderClaimViolation(f"Family {fam.name!r} is not {expected.value}", k)
    return terms
