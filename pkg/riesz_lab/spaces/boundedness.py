from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.spaces.elements import element_abs, element_leq, element_sup
from riesz_lab.spaces.norms import norm
from riesz_lab.spaces.tags import Element, NeighborhoodSpec, SpaceTag
from riesz_lab.utils.verdict import Verdict

# parameter checkpoints 1, 2, 4, ..., 2^10
CHECKPOINTS: tuple[int, ...] = tuple(2**i for i in range(11))


@dataclass(frozen=True)
class ParametricFamily:
    """A set {member(k) : k >= 1} declared through a generator and a coordinate bound.

    Attributes:
        name: label used in verdicts and reports
        member: k -> element of the family
        coordinate_bound: k -> element b_k with |member(k)| <= b_k; unboundedness verdicts are read off
            the growth of b_k at the parameter checkpoints
    """

    name: str
    member: Callable[[int], Element]
    coordinate_bound: Callable[[int], Element] | None = None


BoundedSet = Union[Iterable[Element], ParametricFamily]


def gauge(x: Element, U: NeighborhoodSpec, tag: SpaceTag) -> Fraction:
    """The least lambda >= 0 with x in lambda * U."""
    if U.is_ball:
        return norm(x, tag) / U.radius
    return max(gauge(x.factors[i], spec, tag.factors[i]) for i, spec in U.constraints)


def element_size(x: Element, tag: SpaceTag) -> Fraction:
    """norm(x), or for products the gauge of the neighborhood putting every factor in its unit ball."""
    if tag.is_product:
        return gauge(x, NeighborhoodSpec.all_factors(tag), tag)
    return norm(x, tag)


def neighborhood_contains(x: Element, U: NeighborhoodSpec, tag: SpaceTag) -> bool:
    return gauge(x, U, tag) <= 1


def _diverges(values: list[Fraction]) -> bool:
    non_decreasing = all(b >= a for a, b in zip(values, values[1:]))
    return non_decreasing and values[-3] < values[-2] < values[-1]


def _growth_coordinate(first: Element, last: Element) -> int | None:
    if not isinstance(first, LatticeElement):
        return None
    growth = [abs(b) - abs(a) for a, b in zip(first.coords, last.coords)]
    return max(range(len(growth)), key=lambda i: (growth[i], -i))


def _factor_channels(tag: SpaceTag) -> list[tuple[tuple[int, ...], SpaceTag]]:
    """Every non-product factor of ``tag`` with its index path."""
    if not tag.is_product:
        return [((), tag)]
    channels = []
    for i, factor in enumerate(tag.factors):
        channels.extend(((i, *path), leaf) for path, leaf in _factor_channels(factor))
    return channels


def _at_path(x: Element, path: tuple[int, ...]) -> Element:
    for i in path:
        x = x.factors[i]
    return x


def _family_bounded(A: ParametricFamily, U: NeighborhoodSpec, tag: SpaceTag) -> Verdict:
    if A.coordinate_bound is None:
        raise ValueError(f"Family {A.name!r} lacks a computable coordinate-bound function")
    bounds = {k: A.coordinate_bound(k) for k in CHECKPOINTS}
    for k, bound in bounds.items():
        if not element_leq(element_abs(A.member(k)), bound):
            raise ValueError(f"Family {A.name!r}: member {k} is not dominated by its declared bound")
    notes = (f"checkpointed at k in {{1, 2, ..., {CHECKPOINTS[-1]}}}",)
    # a product set is bounded iff every factor projection is bounded in its factor
    for path, leaf in _factor_channels(tag):
        curve = [(k, norm(_at_path(bounds[k], path), leaf)) for k in CHECKPOINTS]
        if _diverges([v for _, v in curve]):
            witness = {
                "factor": list(path) if path else None,
                "coordinate": _growth_coordinate(
                    _at_path(bounds[CHECKPOINTS[0]], path), _at_path(bounds[CHECKPOINTS[-1]], path)
                ),
                "curve": curve,
            }
            return Verdict(holds=False, witness=witness, notes=notes)
    scale = max(gauge(bounds[k], U, tag) for k in CHECKPOINTS)
    return Verdict(holds=True, scale=scale, notes=notes)


def is_bounded_in(A: BoundedSet, U: NeighborhoodSpec, tag: SpaceTag) -> Verdict:
    """Decide whether A is absorbed by the neighborhood U of the space ``tag``.

    For a finite set the verdict carries the least scale lambda with A contained in lambda * U. For a
    parametric family it carries the scale over the checkpoints, or an unbounded-direction witness
    ``{"factor", "coordinate", "curve"}`` naming the diverging factor (index path, None for norm tags)
    and coordinate.
    """
    if not U.conforms(tag):
        raise ValueError(f"Neighborhood {U.to_json()} does not fit {tag.label}")
    if isinstance(A, ParametricFamily):
        return _family_bounded(A, U, tag)
    members = list(A)
    if not members:
        return Verdict(holds=True, scale=Fraction(0))
    return Verdict(holds=True, scale=max(gauge(a, U, tag) for a in members))


def order_bound(A: Iterable[Element]) -> Element:
    """The least u with |a| <= u for every a in the finite set A."""
    return element_sup(element_abs(a) for a in A)


def is_order_bounded(A: Iterable[Element], u: Element) -> bool:
    return all(element_leq(element_abs(a), u) for a in A)
