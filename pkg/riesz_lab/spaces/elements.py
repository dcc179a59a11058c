"""Lattice operations dispatched over the three element representations."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from riesz_lab.lattice.closure import subset_extrema
from riesz_lab.lattice.element import LatticeElement, abs_value, join, leq, meet
from riesz_lab.lattice.rational import RationalLike
from riesz_lab.pwl.function import (
    PwlFunc,
    pwl_abs,
    pwl_add,
    pwl_join,
    pwl_leq,
    pwl_meet,
    pwl_negate,
    pwl_scale,
)
from riesz_lab.spaces.tags import Element, ProductElement, SpaceTag
from riesz_lab.utils.configuration import Configuration
from riesz_lab.utils.exceptions import DimensionMismatchError


def _check_same_kind(x: Element, y: Element) -> None:
    if type(x) is not type(y):
        raise TypeError(f"Cannot combine {type(x).__name__} with {type(y).__name__}")
    if isinstance(x, ProductElement) and len(x.factors) != len(y.factors):
        raise DimensionMismatchError(len(x.factors), len(y.factors), what="products")


def element_join(x: Element, y: Element) -> Element:
    _check_same_kind(x, y)
    if isinstance(x, ProductElement):
        return ProductElement(element_join(a, b) for a, b in zip(x.factors, y.factors))
    if isinstance(x, PwlFunc):
        return pwl_join(x, y)
    return join(x, y)


def element_meet(x: Element, y: Element) -> Element:
    _check_same_kind(x, y)
    if isinstance(x, ProductElement):
        return ProductElement(element_meet(a, b) for a, b in zip(x.factors, y.factors))
    if isinstance(x, PwlFunc):
        return pwl_meet(x, y)
    return meet(x, y)


def element_abs(x: Element) -> Element:
    if isinstance(x, ProductElement):
        return ProductElement(element_abs(a) for a in x.factors)
    if isinstance(x, PwlFunc):
        return pwl_abs(x)
    return abs_value(x)


def element_neg(x: Element) -> Element:
    if isinstance(x, ProductElement):
        return ProductElement(element_neg(a) for a in x.factors)
    if isinstance(x, PwlFunc):
        return pwl_negate(x)
    return -x


def element_add(x: Element, y: Element) -> Element:
    _check_same_kind(x, y)
    if isinstance(x, ProductElement):
        return ProductElement(element_add(a, b) for a, b in zip(x.factors, y.factors))
    if isinstance(x, PwlFunc):
        return pwl_add(x, y)
    return x + y


def element_scale(x: Element, factor: RationalLike) -> Element:
    if isinstance(x, ProductElement):
        return ProductElement(element_scale(a, factor) for a in x.factors)
    if isinstance(x, PwlFunc):
        return pwl_scale(x, factor)
    return x.scale(factor)


def element_leq(x: Element, y: Element) -> bool:
    _check_same_kind(x, y)
    if isinstance(x, ProductElement):
        return all(element_leq(a, b) for a, b in zip(x.factors, y.factors))
    if isinstance(x, PwlFunc):
        return pwl_leq(x, y)
    return leq(x, y)


def element_is_positive(x: Element) -> bool:
    if isinstance(x, ProductElement):
        return all(element_is_positive(a) for a in x.factors)
    return x.is_positive()


def element_is_zero(x: Element) -> bool:
    if isinstance(x, ProductElement):
        return all(element_is_zero(a) for a in x.factors)
    return x.is_zero()


def element_zero(tag: SpaceTag) -> Element:
    if tag.is_product:
        return ProductElement(element_zero(f) for f in tag.factors)
    if tag.is_pwl:
        return PwlFunc.constant(0)
    return LatticeElement.zeros(tag.dim)


def element_clamp(x: Element, bound: Element) -> Element:
    """(x v -|bound|) ^ |bound|, an element dominated by ``bound`` in absolute value."""
    size = element_abs(bound)
    return element_meet(element_join(x, element_neg(size)), size)


def element_sup(elements: Iterable[Element]) -> Element:
    members = list(elements)
    if not members:
        raise ValueError("The supremum of an empty set is not an element")
    return reduce(element_join, members)


def element_sup_closure(elements: Sequence[Element], cap: int | None = None) -> list[Element]:
    """All distinct finite suprema of ``elements``, for any element representation."""
    if not elements:
        raise ValueError("Closures are only defined for nonempty sets")
    cap = Configuration.RIESZ_LAB_CLOSURE_CAP if cap is None else cap
    return subset_extrema(elements, element_join, cap)


def embed(x: Element, factor: int, tag: SpaceTag) -> ProductElement:
    """x placed in factor ``factor`` of the product ``tag``, zero elsewhere."""
    return ProductElement(x if i == factor else element_zero(f) for i, f in enumerate(tag.factors))


def flatten(x: Element) -> LatticeElement:
    """Concatenated coordinates of a coordinate-lattice or product-of-coordinate-lattices element."""
    if isinstance(x, LatticeElement):
        return x
    if isinstance(x, ProductElement):
        coords: list[Fraction] = []
        for factor in x.factors:
            coords.extend(flatten(factor).coords)
        return LatticeElement(coords)
    raise TypeError("PWL functions have no coordinate vector")


def unflatten(vector: LatticeElement, tag: SpaceTag) -> Element:
    if tag.total_dim is None:
        raise TypeError(f"{tag.label} has no coordinate vector")
    if vector.dim != tag.total_dim:
        raise DimensionMismatchError(vector.dim, tag.total_dim)
    if not tag.is_product:
        return vector
    parts = []
    offset = 0
    for factor in tag.factors:
        size = factor.total_dim
        parts.append(unflatten(LatticeElement(vector.coords[offset : offset + size]), factor))
        offset += size
    return ProductElement(parts)
