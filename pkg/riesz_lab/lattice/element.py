from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from riesz_lab.lattice.rational import RationalLike, format_rational, to_rational
from riesz_lab.utils.exceptions import DimensionMismatchError


@dataclass(frozen=True)
class LatticeElement:
    """An exact-rational vector of R^n ordered coordinatewise.

    Attributes:
        coords: the coordinates, converted to Fractions on construction
    """

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[RationalLike]):
        converted = tuple(to_rational(c) for c in coords)
        if not converted:
            raise ValueError("Zero-dimensional lattices are not supported")
        object.__setattr__(self, "coords", converted)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def zeros(cls, dim: int) -> LatticeElement:
        return cls([0] * dim)

    @classmethod
    def ones(cls, dim: int) -> LatticeElement:
        return cls([1] * dim)

    @classmethod
    def basis(cls, index: int, dim: int) -> LatticeElement:
        """The unit vector e_index (0-based)."""
        if not 0 <= index < dim:
            raise ValueError(f"Basis index {index} out of range for dimension {dim}")
        return cls([1 if i == index else 0 for i in range(dim)])

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __add__(self, other: LatticeElement) -> LatticeElement:
        _check_dims(self, other)
        return LatticeElement(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: LatticeElement) -> LatticeElement:
        _check_dims(self, other)
        return LatticeElement(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> LatticeElement:
        return LatticeElement(-a for a in self.coords)

    def scale(self, factor: RationalLike) -> LatticeElement:
        t = to_rational(factor)
        return LatticeElement(t * a for a in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def lex_key(self) -> tuple[Fraction, ...]:
        return self.coords

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]

    @classmethod
    def from_json(cls, payload: Sequence[RationalLike]) -> LatticeElement:
        return cls(payload)

    def __repr__(self) -> str:
        return f"({', '.join(format_rational(c) for c in self.coords)})"


def _check_dims(x: LatticeElement, y: LatticeElement) -> None:
    if x.dim != y.dim:
        raise DimensionMismatchError(x.dim, y.dim)


def join(x: LatticeElement, y: LatticeElement) -> LatticeElement:
    """Coordinatewise maximum, the least upper bound of x and y."""
    _check_dims(x, y)
    return LatticeElement(max(a, b) for a, b in zip(x.coords, y.coords))


def meet(x: LatticeElement, y: LatticeElement) -> LatticeElement:
    """Coordinatewise minimum, equal to -((-x) v (-y))."""
    _check_dims(x, y)
    return LatticeElement(min(a, b) for a, b in zip(x.coords, y.coords))


def negate(x: LatticeElement) -> LatticeElement:
    return -x


def abs_pos_neg(x: LatticeElement) -> tuple[LatticeElement, LatticeElement, LatticeElement]:
    """Return (|x|, x+, x-) with x = x+ - x- and |x| = x+ + x-."""
    zero = LatticeElement.zeros(x.dim)
    pos = join(x, zero)
    neg = join(-x, zero)
    return join(x, -x), pos, neg


def abs_value(x: LatticeElement) -> LatticeElement:
    return join(x, -x)


def leq(x: LatticeElement, y: LatticeElement) -> bool:
    """The coordinatewise partial order."""
    _check_dims(x, y)
    return all(a <= b for a, b in zip(x.coords, y.coords))


def clamp(x: LatticeElement, lo: LatticeElement, hi: LatticeElement) -> LatticeElement:
    """(x v lo) ^ hi; lies in the order interval [lo, hi] whenever lo <= hi."""
    return meet(join(x, lo), hi)


@dataclass(frozen=True)
class FiniteSet:
    """A finite set of lattice elements sharing one dimension.

    With ``dedup`` set (the default) duplicates are removed and the members are sorted by the total
    lexicographic order of their coordinates, which makes membership and equality canonical.
    """

    elements: tuple[LatticeElement, ...]
    dedup: bool = field(default=True)

    def __init__(self, elements: Iterable[LatticeElement], dedup: bool = True):
        members = tuple(elements)
        dims = {e.dim for e in members}
        if len(dims) > 1:
            low, high = sorted(dims)[:2]
            raise DimensionMismatchError(low, high, what="set members")
        if dedup:
            members = tuple(sorted(set(members), key=LatticeElement.lex_key))
        object.__setattr__(self, "elements", members)
        object.__setattr__(self, "dedup", dedup)

    @property
    def dim(self) -> int | None:
        return self.elements[0].dim if self.elements else None

    def __iter__(self) -> Iterator[LatticeElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.elements

    def negate(self) -> FiniteSet:
        return FiniteSet((-e for e in self.elements), dedup=self.dedup)

    def issubset(self, other: FiniteSet) -> bool:
        return set(self.elements) <= set(other.elements)

    def to_json(self) -> list[list[str]]:
        return [e.to_json() for e in self.elements]

    @classmethod
    def from_json(cls, payload: Sequence[Sequence[RationalLike]]) -> FiniteSet:
        return cls(LatticeElement(row) for row in payload)
