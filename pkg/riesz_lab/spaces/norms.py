from __future__ import annotations

from fractions import Fraction
from typing import Callable

from riesz_lab.pwl.function import pwl_l1_norm, pwl_sup_norm
from riesz_lab.spaces.elements import element_clamp, element_scale
from riesz_lab.spaces.tags import Element, SpaceKind, SpaceTag
from riesz_lab.utils.exceptions import UnsupportedTagError
from riesz_lab.utils.sampling import RationalSampler
from riesz_lab.utils.verdict import Verdict

NormFunction = Callable[[Element, SpaceTag], Fraction]


def norm(x: Element, tag: SpaceTag) -> Fraction:
    """The lattice norm of x in the space ``tag``.

    Raises:
        UnsupportedTagError: ``tag`` is a product, which carries a topology but no single norm; use
            ``is_bounded_in`` with a NeighborhoodSpec instead
        ValueError: x does not conform to ``tag``
    """
    if tag.is_product:
        raise UnsupportedTagError(
            f"{tag.label} has no single norm; measure product sets with is_bounded_in and a NeighborhoodSpec"
        )
    if not tag.conforms(x):
        raise ValueError(f"{x!r} does not belong to {tag.label}")
    if tag.kind == SpaceKind.PwlSup:
        return pwl_sup_norm(x)
    if tag.kind == SpaceKind.PwlL1:
        return pwl_l1_norm(x)
    if tag.kind == SpaceKind.SeqLInf:
        return max(abs(c) for c in x.coords)
    if tag.kind == SpaceKind.WeightedL1:
        return sum((w * abs(c) for w, c in zip(tag.weights, x.coords)), Fraction(0))
    return sum((abs(c) for c in x.coords), Fraction(0))


def into_unit_ball(x: Element, tag: SpaceTag) -> Element:
    """x itself when it lies in the closed unit ball, x / norm(x) otherwise."""
    size = norm(x, tag)
    return x if size <= 1 else element_scale(x, 1 / size)


def solidity_check(
    tag: SpaceTag,
    trials: int,
    seed: int,
    norm_fn: NormFunction = norm,
) -> Verdict:
    """Check that the norm of ``tag`` is monotone on dominated pairs.

    Each trial draws y, then x = (z v -|y|) ^ |y| for a fresh z, so that |x| <= |y| holds exactly, and
    asserts norm(x) <= norm(y).

    Args:
        tag: a norm tag
        trials: number of random pairs
        seed: sampler seed
        norm_fn: the norm under test, only replaced by test fixtures

    Returns:
        Verdict holding when no pair violates monotonicity; otherwise the witness is the first
        violating (x, y) pair.
    """
    if tag.is_product:
        raise UnsupportedTagError("Solidity of product neighborhoods is checked factorwise")
    sampler = RationalSampler(seed)
    for trial in range(trials):
        y = sampler.sample(tag)
        x = element_clamp(sampler.sample(tag), y)
        if norm_fn(x, tag) > norm_fn(y, tag):
            return Verdict(
                holds=False,
                witness=(x, y),
                notes=(f"trial {trial}: |x| <= |y| but norm(x) > norm(y)",),
            )
    return Verdict(holds=True, notes=(f"{trials} dominated pairs, seed {seed}",))
