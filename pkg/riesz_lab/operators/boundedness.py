from __future__ import annotations

from fractions import Fraction

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.operators.matrix import MatrixOp, Operator, apply, as_matrix, dominates, modulus_matrix
from riesz_lab.spaces.boundedness import BoundedSet, ParametricFamily, is_bounded_in
from riesz_lab.spaces.elements import embed
from riesz_lab.spaces.norms import norm
from riesz_lab.spaces.tags import NeighborhoodSpec, SpaceKind, SpaceTag
from riesz_lab.utils.exceptions import ProbePreconditionError, UnsupportedTagError
from riesz_lab.utils.verdict import Verdict


def _block(T: MatrixOp, start: int, width: int) -> MatrixOp:
    return MatrixOp([row[start : start + width] for row in T.entries], range_tag=T.range_tag)


def _ball_image_bound(block: MatrixOp, factor: SpaceTag, radius: Fraction) -> tuple[Fraction, bool]:
    """sup of norm(block x) over the ball of ``radius`` in ``factor``, and whether the value is exact.

    l1-type balls are the convex hull of the scaled signed basis vectors, so the sup is attained there.
    For l-inf balls the value norm(|block| (r, ..., r)) is exact for an l-inf range and an upper bound
    otherwise.
    """
    range_tag = block.range_tag
    n = block.shape[1]
    if factor.kind in (SpaceKind.SeqL1, SpaceKind.WeightedL1):
        weights = factor.weights or (Fraction(1),) * n
        return max(norm(block.column(j), range_tag) * radius / weights[j] for j in range(n)), True
    if factor.kind == SpaceKind.SeqLInf:
        corner = LatticeElement([radius] * n)
        exact = range_tag.kind == SpaceKind.SeqLInf
        return norm(apply(modulus_matrix(block), corner), range_tag), exact
    raise UnsupportedTagError(f"Matrices do not act on {factor.label}")


def nb_bounded_check(T: Operator, U: NeighborhoodSpec) -> Verdict:
    """Whether T maps the zero neighborhood U of its domain onto a bounded set.

    Norm-ball neighborhoods always have bounded images in finite dimensions; the verdict carries the scale
    (the induced norm times the radius for l1/l-inf pairs). For a product domain, U constrains finitely
    many factors; T(U) is bounded iff T ignores every unconstrained factor, otherwise the witness is the
    first unconstrained basis direction with a nonzero image.
    """
    T = as_matrix(T)
    domain = T.domain_tag
    if not U.conforms(domain):
        raise ValueError(f"Neighborhood {U.to_json()} does not fit {domain.label}")
    range_is_norm = T.range_tag.is_norm_tag

    if U.is_ball:
        if not range_is_norm:
            return Verdict(holds=True, notes=("range is a product; the image is bounded factorwise",))
        scale, exact = _ball_image_bound(T, domain, U.radius)
        return Verdict(holds=True, scale=scale, notes=() if exact else ("scale is an upper bound",))

    constrained = U.constraint_map
    offset = 0
    scale = Fraction(0)
    exact = True
    for i, factor in enumerate(domain.factors):
        width = factor.total_dim
        block = _block(T, offset, width)
        if i not in constrained:
            for c in range(width):
                image = block.column(c)
                if not image.is_zero():
                    direction = embed(LatticeElement.basis(c, width), i, domain)
                    return Verdict(
                        holds=False,
                        witness={"factor": i, "coordinate": c, "direction": direction, "image": image},
                        notes=(f"factor {i} is unconstrained by U and T does not vanish on it",),
                    )
        elif range_is_norm:
            spec = constrained[i]
            if not spec.is_ball:
                raise UnsupportedTagError("Nested product neighborhoods are not supported")
            bound, block_exact = _ball_image_bound(block, factor, spec.radius)
            scale += bound
            exact = exact and block_exact
        offset += width
    if not range_is_norm:
        return Verdict(holds=True, notes=("range is a product; the image is bounded factorwise",))
    notes = ("scale sums the constrained factor blocks and is an upper bound",)
    if exact and len(constrained) == 1:
        notes = ()
    return Verdict(holds=True, scale=scale, notes=notes)


def _default_neighborhood(tag: SpaceTag) -> NeighborhoodSpec:
    return NeighborhoodSpec.all_factors(tag) if tag.is_product else NeighborhoodSpec.ball(1)


def bb_bounded_check(T: Operator, B: BoundedSet) -> Verdict:
    """Whether T maps the bounded set B of its domain onto a bounded set of its range.

    A parametric family is pushed forward with the bound k -> |T| b_k, which dominates |T x_k|.

    Raises:
        ProbePreconditionError: B itself is not bounded, so it says nothing about bb-boundedness
    """
    T = as_matrix(T)
    domain_verdict = is_bounded_in(B, _default_neighborhood(T.domain_tag), T.domain_tag)
    if not domain_verdict.holds:
        raise ProbePreconditionError(f"The input set is unbounded in {T.domain_tag.label}")
    modulus = modulus_matrix(T)
    if isinstance(B, ParametricFamily):
        image = ParametricFamily(
            name=f"T({B.name})",
            member=lambda k: apply(T, B.member(k)),
            coordinate_bound=lambda k: apply(modulus, B.coordinate_bound(k)),
        )
    else:
        image = [apply(T, b) for b in B]
    return is_bounded_in(image, _default_neighborhood(T.range_tag), T.range_tag)


def ideal_property_check(S: Operator, T: Operator, U: NeighborhoodSpec) -> Verdict:
    """|T| <= |S| and S nb-bounded at U imply T nb-bounded at U with a scale no larger than S's."""
    if not dominates(S, T):
        raise ProbePreconditionError("The ideal property needs |T| <= |S|")
    verdict_s = nb_bounded_check(S, U)
    verdict_t = nb_bounded_check(T, U)
    if not verdict_s.holds:
        return Verdict(holds=True, witness=(verdict_s, verdict_t), notes=("S is not nb-bounded at U",))
    scales_ordered = verdict_s.scale is None or verdict_t.scale is None or verdict_t.scale <= verdict_s.scale
    return Verdict(
        holds=verdict_t.holds and scales_ordered,
        scale=verdict_t.scale,
        witness=(verdict_s, verdict_t),
    )
