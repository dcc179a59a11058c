from __future__ import annotations

from fractions import Fraction

from riesz_lab.diagnostics.families import SequenceFamily, check_order_claim
from riesz_lab.diagnostics.lebesgue import DEFAULT_THRESHOLD, lebesgue_preconditions
from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.element import LatticeElement
from riesz_lab.lattice.rational import dyadic, format_rational
from riesz_lab.operators.boundedness import ideal_property_check
from riesz_lab.operators.matrix import (
    MatrixOp,
    RankOneOp,
    apply,
    as_matrix,
    dominates,
    induced_norm,
    is_positive,
    modulus_matrix,
    normalizing_functional,
    operator_leq,
)
from riesz_lab.operators.sequence import Monotonicity, OperatorSeq, operator_seq_monotone_check
from riesz_lab.spaces.boundedness import element_size
from riesz_lab.spaces.elements import element_is_positive, element_leq
from riesz_lab.spaces.norms import norm
from riesz_lab.spaces.tags import Element, NeighborhoodSpec, SpaceKind, SpaceTag
from riesz_lab.utils.exceptions import OrderClaimViolation, ProbePreconditionError
from riesz_lab.utils.sampling import RationalSampler

EQUICONTINUOUS_NOTE = (
    "only induced-norm convergence of sequences is checked; nothing is claimed about the equicontinuous "
    "convergence topology, and the Frechet-space route is not mechanized"
)


def operator_levi_preconditions(
    y_family: SequenceFamily, x0: LatticeElement, K: int
) -> tuple[list[LatticeElement], tuple[Fraction, ...]]:
    """The members y_1, ..., y_K and the functional f with f(x0) = 1."""
    terms = check_order_claim(y_family, K, Monotonicity.increasing)
    tag = y_family.space
    if not tag.is_coordinate:
        raise ProbePreconditionError("operator_levi_demo needs a family in a coordinate lattice")
    if x0.dim < 1:
        raise ProbePreconditionError("x0 must have at least one coordinate")
    for k, term in enumerate(terms, start=1):
        if not element_is_positive(term):
            raise ProbePreconditionError(f"Family {y_family.name!r}: member {k} is not positive")
        if y_family.norm_bound is not None and norm(term, tag) > y_family.norm_bound:
            raise ProbePreconditionError(f"Family {y_family.name!r} exceeds its declared norm bound at k={k}")
    return terms, normalizing_functional(x0)


def operator_levi_demo(y_family: SequenceFamily, x0: LatticeElement, K: int) -> ProbeReport:
    """Lift an increasing bounded family y_k to the operators T_k = f (x) y_k and back.

    f is the coordinate functional with f(x0) = 1. The supremum operator T = f (x) sup y_k must dominate
    every T_k and send x0 to sup y_k.

    Raises:
        ProbePreconditionError: x0 has no strictly positive coordinate, or the family is not an
            increasing positive family of a coordinate lattice
        OrderClaimViolation: the family or the lifted operators are not increasing
    """
    terms, f = operator_levi_preconditions(y_family, x0, K)
    tag = y_family.space
    norms = [(k, norm(term, tag)) for k, term in enumerate(terms, start=1)]
    lifted = OperatorSeq(
        name=f"f (x) {y_family.name}",
        generator=lambda k: RankOneOp(f, y_family.term(k), range_tag=tag),
        monotonicity_claim=Monotonicity.increasing,
    )
    monotone = operator_seq_monotone_check(lifted, K)
    if not monotone.holds:
        raise OrderClaimViolation(f"{lifted.name} is not increasing", monotone.witness)
    operators = [lifted.term(k) for k in range(1, K + 1)]
    notes = [f"f = {LatticeElement(f)!r} with f(x0) = 1", *monotone.notes]
    if all(dominates(later, earlier) for earlier, later in zip(operators, operators[1:])):
        notes.append("|T_k| <= |T_(k+1)| for every k < K")

    finite_stage = terms[-1]
    if terms[-2] == finite_stage:
        supremum = finite_stage
    elif y_family.limit is not None:
        if not all(element_leq(term, y_family.limit) for term in terms):
            raise ProbePreconditionError(
                f"Family {y_family.name!r}: the declared limit is not an upper bound"
            )
        supremum = y_family.limit
        notes.append(
            f"finite-stage supremum at k={K} is {finite_stage!r}; the limit is identified symbolically"
        )
    else:
        notes.append(f"the family still grows at k={K} and declares no limit")
        return ProbeReport("operator_levi_demo", ProbeVerdict.inconclusive, curve=norms, notes=notes)

    T = RankOneOp(f, supremum, range_tag=tag)
    image = apply(T, x0)
    dominating = all(operator_leq(T_k, T) for T_k in operators)
    if as_matrix(T) == operators[0]:
        notes.append("the supremum operator equals T_1")
    witnesses = [{"functional": f, "supremum_operator": T, "x0": x0, "image": image, "supremum": supremum}]
    if image == supremum and dominating:
        notes.append("T(x0) equals the family supremum")
        return ProbeReport("operator_levi_demo", ProbeVerdict.holds, witnesses, curve=norms, notes=notes)
    return ProbeReport("operator_levi_demo", ProbeVerdict.fails, witnesses, curve=norms, notes=notes)


def _infimum_is_zero(seq: OperatorSeq, first: MatrixOp, last: MatrixOp) -> None:
    if seq.limit is not None and any(a != 0 for row in seq.limit.entries for a in row):
        raise ProbePreconditionError(f"{seq.name} declares a nonzero limit")
    for i, (row_first, row_last) in enumerate(zip(first.entries, last.entries)):
        for j, (a, b) in enumerate(zip(row_first, row_last)):
            if b != 0 and b >= a:
                raise ProbePreconditionError(
                    f"{seq.name}: infimum is not zero, entry ({i}, {j}) stays at {format_rational(b)}"
                )


def operator_lebesgue_preconditions(T_family: OperatorSeq, tag: SpaceTag, K: int) -> list[MatrixOp]:
    """T_1, ..., T_K retagged to ``tag``, after checking positivity, decrease and a zero infimum."""
    if T_family.monotonicity_claim != Monotonicity.decreasing:
        raise ProbePreconditionError(f"{T_family.name} must be claimed decreasing")
    if tag.kind not in (SpaceKind.SeqL1, SpaceKind.SeqLInf):
        raise ProbePreconditionError("operator_lebesgue_demo runs on SeqL1 and SeqLInf")
    if K < 2:
        raise ProbePreconditionError("K must be at least 2")
    terms = [T_family.term(k).with_tags(tag, tag) for k in range(1, K + 1)]
    for k, T in enumerate(terms, start=1):
        if not is_positive(T):
            raise ProbePreconditionError(f"{T_family.name}: T_{k} is not positive")
    monotone = operator_seq_monotone_check(T_family, K)
    if not monotone.holds:
        raise OrderClaimViolation(f"{T_family.name} is not decreasing", monotone.witness)
    _infimum_is_zero(T_family, terms[0], terms[-1])
    return terms


def operator_lebesgue_demo(
    T_family: OperatorSeq,
    tag: SpaceTag,
    K: int,
    threshold: Fraction = dyadic(20),
) -> ProbeReport:
    """Uniform convergence of a positive sequence of operators decreasing to 0.

    The curve is induced_norm(T_k) in ``tag``. For SeqLInf the second curve is norm(|T_k| 1), the
    evaluation at the order unit, which coincides with it. Holds when induced_norm(T_K) <= threshold,
    inconclusive otherwise.

    Raises:
        ProbePreconditionError: the sequence is not claimed decreasing, a term is not positive, or the
            entrywise infimum is not zero
        OrderClaimViolation: the terms do not decrease
    """
    terms = operator_lebesgue_preconditions(T_family, tag, K)

    curve = [(k, induced_norm(T)) for k, T in enumerate(terms, start=1)]
    curves = {}
    notes = [f"{T_family.name} on {tag.label}, decreasing for k <= {K}", EQUICONTINUOUS_NOTE]
    if tag.kind == SpaceKind.SeqLInf:
        unit = LatticeElement.ones(tag.dim)
        curves["order_unit"] = [
            (k, norm(apply(modulus_matrix(T), unit), tag)) for k, T in enumerate(terms, start=1)
        ]
        notes.append("order_unit column: norm(|T_k| (1, ..., 1)), equal to the induced norm on SeqLInf")
    last = curve[-1][1]
    if last <= threshold:
        witnesses = [{"k": K, "operator": terms[-1], "induced_norm": last}]
        return ProbeReport("operator_lebesgue_demo", ProbeVerdict.holds, witnesses, curve, curves, notes)
    notes.append(f"induced norm {format_rational(last)} at k={K} is above {format_rational(threshold)}")
    return ProbeReport("operator_lebesgue_demo", ProbeVerdict.inconclusive, [], curve, curves, notes)


def operator_lebesgue_rank_one_preconditions(
    u_family: SequenceFamily, x0: LatticeElement, K: int, threshold: Fraction = DEFAULT_THRESHOLD
) -> tuple[list[Element], tuple[Fraction, ...]]:
    """The members u_1, ..., u_K of a positive family decreasing to 0 and the functional f with f(x0) = 1."""
    if u_family.space.is_product:
        raise ProbePreconditionError("operator_lebesgue_rank_one_demo needs a coordinate or PWL family")
    terms = lebesgue_preconditions(u_family, K, threshold)
    return terms, normalizing_functional(x0)


def operator_lebesgue_rank_one_demo(
    u_family: SequenceFamily,
    x0: LatticeElement,
    K: int,
    threshold: Fraction = DEFAULT_THRESHOLD,
) -> ProbeReport:
    """Lift a positive family u_k decreasing to 0 to the rank-one operators T_k = f (x) u_k.

    f is positive with f(x0) = 1, so T_k decreases to 0 and T_k(x0) = u_k. The curve is norm(T_k x0),
    which bounds the operator norm of T_k from below: uniform convergence of T_k forces norm(u_k) -> 0.
    The induced_norm column is ||f||_1 norm(u_k), the operator norm of T_k on SeqLInf(dim x0).
    Verdicts follow lebesgue_probe on that curve.

    Raises:
        ProbePreconditionError: x0 has no strictly positive coordinate, the family lives in a product, or
            it is not a positive family decreasing to 0
        OrderClaimViolation: the family is not decreasing
    """
    terms, f = operator_lebesgue_rank_one_preconditions(u_family, x0, K, threshold)
    tag = u_family.space
    operators = [RankOneOp(f, term, range_tag=tag) for term in terms]
    images = [apply(T, x0) for T in operators]
    if any(image != term for image, term in zip(images, terms)):
        raise ProbePreconditionError(f"f = {LatticeElement(f)!r} does not send x0 to 1")
    if not all(is_positive(T) for T in operators):
        raise ProbePreconditionError(f"{u_family.name}: a lifted operator is not positive")
    dual_norm = sum((abs(a) for a in f), Fraction(0))
    curve = [(k, element_size(image, tag)) for k, image in enumerate(images, start=1)]
    curves = {"induced_norm": [(k, dual_norm * value) for k, value in curve]}
    notes = [
        f"f = {LatticeElement(f)!r} with f(x0) = 1; T_k = f (x) u_k into {tag.label}",
        f"T_k(x0) = u_k and T_k >= 0 for every k <= {K}",
        EQUICONTINUOUS_NOTE,
    ]

    last = curve[-1][1]
    name = "operator_lebesgue_rank_one_demo"
    if last <= threshold:
        witnesses = [{"k": K, "operator": operators[-1], "x0": x0, "norm": last}]
        return ProbeReport(name, ProbeVerdict.holds, witnesses, curve, curves, notes)
    if all(value == last for _, value in curve):
        witnesses = [{"k": K, "operator": operators[-1], "x0": x0, "image": images[-1], "norm": last}]
        notes.append(
            f"constant-norm certificate: norm(T_k x0) = {format_rational(last)} for every k <= {K}, "
            "so T_k does not converge uniformly"
        )
        return ProbeReport(name, ProbeVerdict.fails, witnesses, curve, curves, notes)
    notes.append(
        f"norm(T_{K} x0) = {format_rational(last)} is above the threshold {format_rational(threshold)}"
    )
    return ProbeReport(name, ProbeVerdict.inconclusive, [], curve, curves, notes)


def domination_ideal_echo(trials: int = 500, seed: int = 0, max_shape: int = 3) -> ProbeReport:
    """|T| <= |S| forces induced_norm(T) <= induced_norm(S) on l1 and l-inf, and T inherits S's scale.

    T is drawn entrywise as S_ij * c_ij with |c_ij| <= 1, so S dominates T by construction.
    """
    if max_shape < 1:
        raise ValueError("max_shape must be at least 1")
    sampler = RationalSampler(seed)
    for trial in range(trials):
        m, n = sampler.integer(1, max_shape), sampler.integer(1, max_shape)
        S_entries = [[sampler.scalar() for _ in range(n)] for _ in range(m)]
        T_entries = [[a * sampler.unit_scalar() for a in row] for row in S_entries]
        for kind in (SpaceKind.SeqL1, SpaceKind.SeqLInf):
            S = MatrixOp(S_entries, SpaceTag(kind, n), SpaceTag(kind, m))
            T = MatrixOp(T_entries, SpaceTag(kind, n), SpaceTag(kind, m))
            norm_s, norm_t = induced_norm(S), induced_norm(T)
            ideal = ideal_property_check(S, T, NeighborhoodSpec.ball(1))
            if norm_t > norm_s or not ideal.holds:
                return ProbeReport(
                    "domination_ideal_echo",
                    ProbeVerdict.fails,
                    [{"trial": trial, "kind": kind, "S": S, "T": T, "norm_S": norm_s, "norm_T": norm_t}],
                    seed=seed,
                )
    return ProbeReport(
        "domination_ideal_echo",
        ProbeVerdict.holds,
        notes=[f"{trials} dominated pairs up to {max_shape} x {max_shape}, SeqL1 and SeqLInf"],
        seed=seed,
    )
