from __future__ import annotations

from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.element import LatticeElement
from riesz_lab.lattice.rational import dyadic, format_rational
from riesz_lab.operators.boundedness import bb_bounded_check, nb_bounded_check
from riesz_lab.operators.matrix import MatrixOp, apply, basis_projection, induced_norm, order_bounded_image
from riesz_lab.spaces.elements import unflatten
from riesz_lab.spaces.norms import norm
from riesz_lab.spaces.tags import NeighborhoodSpec, SpaceKind, SpaceTag, make_product
from riesz_lab.utils.exceptions import UnsupportedTagError


def projection_gap(dim: int = 16, kind: SpaceKind | str = SpaceKind.SeqLInf) -> ProbeReport:
    """gap(n) = induced_norm(I - P_n) for n = 1 .. dim-1, next to the pointwise contrast norm((I - P_n) x).

    P_n keeps the first n coordinates. The contrast vector has x_i = 2^-i (1-based), so the pointwise
    values tend to 0 while every gap stays 1: the basis projections increase to I without converging
    uniformly on the unit ball.
    """
    kind = SpaceKind(kind)
    if kind not in (SpaceKind.SeqL1, SpaceKind.SeqLInf):
        raise UnsupportedTagError(f"projection_gap runs on SeqL1 and SeqLInf, not {kind.value}")
    if dim < 2:
        raise ValueError("projection_gap needs dim >= 2")
    tag = SpaceTag(kind, dim)
    identity = MatrixOp.identity(dim, tag)
    contrast = LatticeElement(dyadic(i) for i in range(1, dim + 1))
    gaps = []
    pointwise = []
    for n in range(1, dim):
        remainder = identity - basis_projection(n, dim, tag)
        gaps.append((n, induced_norm(remainder)))
        pointwise.append((n, norm(apply(remainder, contrast), tag)))

    notes = [
        f"{tag.label}: P_n increases to I",
        f"pointwise contrast at x_i = 2^-i reaches {format_rational(pointwise[-1][1])} at n={dim - 1}",
    ]
    if all(gap == 1 for _, gap in gaps):
        # (I - P_n) e_n = e_n in 0-based coordinates
        witnesses = [
            {"n": n, "direction": LatticeElement.basis(n, dim), "image_norm": gap}
            for n, gap in (gaps[0], gaps[-1])
        ]
        return ProbeReport(
            "projection_gap",
            ProbeVerdict.fails,
            witnesses=witnesses,
            curve=gaps,
            curves={"pointwise": pointwise},
            notes=notes + ["no uniform convergence on the unit ball: gap(n) = 1 for every n < dim"],
        )
    return ProbeReport(
        "projection_gap", ProbeVerdict.holds, curve=gaps, curves={"pointwise": pointwise}, notes=notes
    )


def nb_identity_product(
    factors: int = 3,
    constrained: tuple[int, ...] = (0, 1),
    factor_dim: int = 1,
    kind: SpaceKind | str = SpaceKind.SeqLInf,
) -> ProbeReport:
    """The identity of a finite product: order bounded and bb-bounded, not nb-bounded under a free factor.

    The neighborhood puts each ``constrained`` factor in its unit ball and leaves the others free, the
    truncated picture of the identity on the space of all real sequences. The bb check pushes the
    endpoints of the order interval [-1, 1] through I.
    """
    kind = SpaceKind(kind)
    if factors < 1:
        raise ValueError("factors must be at least 1")
    if any(not 0 <= i < factors for i in constrained) or not constrained:
        raise ValueError(f"constrained factors must be a nonempty subset of 0..{factors - 1}")
    tag = make_product([SpaceTag(kind, factor_dim)] * factors)
    identity = MatrixOp.identity(factors * factor_dim, tag)
    U = NeighborhoodSpec.product({i: NeighborhoodSpec.ball(1) for i in sorted(set(constrained))})
    verdict = nb_bounded_check(identity, U)
    unit = LatticeElement.ones(factors * factor_dim)
    low, high = order_bounded_image(identity, unit)
    bb = bb_bounded_check(identity, [unflatten(low, tag), unflatten(high, tag)])
    notes = [
        f"{tag.label}, U constrains factors {sorted(set(constrained))}",
        f"order bounded: I maps [-1, 1] onto [{low!r}, {high!r}]",
        f"bb-bounded: I maps the endpoints of [-1, 1] onto a set of gauge {format_rational(bb.scale)}",
        *verdict.notes,
    ]
    if verdict.holds:
        return ProbeReport("nb_identity_product", ProbeVerdict.holds, curve=None, notes=notes)
    return ProbeReport(
        "nb_identity_product",
        ProbeVerdict.fails,
        witnesses=[verdict.witness],
        notes=notes,
    )
