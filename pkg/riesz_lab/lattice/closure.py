from __future__ import annotations

import logging
from functools import reduce
from typing import Callable, Hashable, Iterable, TypeVar

from riesz_lab.lattice.element import FiniteSet, LatticeElement, abs_value, join, leq, meet
from riesz_lab.utils.configuration import Configuration
from riesz_lab.utils.exceptions import ClosureTruncatedError

logger = logging.getLogger("riesz_lab.lattice.closure")

T = TypeVar("T", bound=Hashable)


def subset_extrema(elements: Iterable[T], operation: Callable[[T, T], T], cap: int) -> list[T]:
    """Enumerate the distinct values of ``operation`` folded over every nonempty subset.

    The value of a subset is the value of the subset without its last member combined with that member,
    so the subset extrema are built one member at a time instead of visiting all 2^n - 1 subsets
    separately. Insertion order is kept.

    Raises:
        ClosureTruncatedError: more than ``cap`` distinct values; ``partial`` holds the values found so far
    """
    if cap < 1:
        raise ValueError("The closure cap must be a positive integer")
    seen: dict[T, None] = {}
    for member in elements:
        new_values = [member] + [operation(existing, member) for existing in seen]
        for value in new_values:
            if value not in seen:
                seen[value] = None
                if len(seen) > cap:
                    logger.warning("Closure truncated after %d distinct elements", cap)
                    raise ClosureTruncatedError(partial=list(seen)[:cap], cap=cap)
    return list(seen)


def _closure(A: FiniteSet, cap: int | None, operation: Callable) -> FiniteSet:
    if len(A) == 0:
        raise ValueError("Closures are only defined for nonempty sets")
    cap = Configuration.RIESZ_LAB_CLOSURE_CAP if cap is None else cap
    try:
        return FiniteSet(subset_extrema(A, operation, cap))
    except ClosureTruncatedError as e:
        raise ClosureTruncatedError(partial=FiniteSet(e.partial), cap=cap) from None


def sup_closure(A: FiniteSet, cap: int | None = None) -> FiniteSet:
    """A^v: every finite supremum a_1 v ... v a_n of members of A.

    Args:
        A: a nonempty finite set
        cap: maximal number of distinct closure elements, defaults to RIESZ_LAB_CLOSURE_CAP (4096)
    """
    return _closure(A, cap, join)


def inf_closure(A: FiniteSet, cap: int | None = None) -> FiniteSet:
    """A^: every finite infimum of members of A, the dual of sup_closure."""
    return _closure(A, cap, meet)


def finite_sup(A: Iterable[LatticeElement]) -> LatticeElement:
    members = list(A)
    if not members:
        raise ValueError("The supremum of an empty set is not an element")
    return reduce(join, members)


def finite_inf(A: Iterable[LatticeElement]) -> LatticeElement:
    members = list(A)
    if not members:
        raise ValueError("The infimum of an empty set is not an element")
    return reduce(meet, members)


def solid_hull_contains(B: FiniteSet, x: LatticeElement) -> bool:
    """Whether |x| <= |b| for some b in B."""
    size = abs_value(x)
    return any(leq(size, abs_value(b)) for b in B)


def is_upward_directed(A: FiniteSet) -> bool:
    """Every pair of members has a common upper bound inside A."""
    members = list(A)
    return all(
        any(leq(a, c) and leq(b, c) for c in members) for i, a in enumerate(members) for b in members[i + 1 :]
    )


def is_downward_directed(A: FiniteSet) -> bool:
    members = list(A)
    return all(
        any(leq(c, a) and leq(c, b) for c in members) for i, a in enumerate(members) for b in members[i + 1 :]
    )
