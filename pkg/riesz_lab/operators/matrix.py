from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence, Union

from riesz_lab.lattice.element import LatticeElement, abs_value, join
from riesz_lab.lattice.rational import RationalLike, format_rational, to_rational
from riesz_lab.pwl.function import PwlFunc
from riesz_lab.spaces.elements import (
    element_is_positive,
    element_is_zero,
    element_neg,
    element_scale,
    flatten,
    unflatten,
)
from riesz_lab.spaces.tags import Element, SpaceKind, SpaceTag
from riesz_lab.utils.configuration import Configuration
from riesz_lab.utils.exceptions import (
    DimensionMismatchError,
    NotPositiveError,
    OracleGuardError,
    ProbePreconditionError,
    UnsupportedTagError,
)
from riesz_lab.utils.types import NOTSET, ArgNotSet

logger = logging.getLogger("riesz_lab.operators")


def _default_tag(dim: int, tag: SpaceTag | None) -> SpaceTag:
    if tag is None:
        return SpaceTag.seq_linf(dim)
    if tag.total_dim != dim:
        raise DimensionMismatchError(dim, tag.total_dim or 0, what="operator shape and space")
    return tag


@dataclass(frozen=True)
class MatrixOp:
    """A linear operator between coordinate lattices given by an exact m x n matrix.

    Attributes:
        entries: the rows of the matrix
        domain_tag: space of the n-dimensional inputs, SeqLInf(n) unless given
        range_tag: space of the m-dimensional outputs, SeqLInf(m) unless given
    """

    entries: tuple[tuple[Fraction, ...], ...]
    domain_tag: SpaceTag
    range_tag: SpaceTag

    def __init__(
        self,
        entries: Iterable[Iterable[RationalLike]],
        domain_tag: SpaceTag | None = None,
        range_tag: SpaceTag | None = None,
    ):
        rows = tuple(tuple(to_rational(a) for a in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("An operator matrix needs at least one row and one column")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("All matrix rows must have the same length")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "domain_tag", _default_tag(len(rows[0]), domain_tag))
        object.__setattr__(self, "range_tag", _default_tag(len(rows), range_tag))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @classmethod
    def identity(cls, dim: int, tag: SpaceTag | None = None) -> MatrixOp:
        return cls.diagonal([1] * dim, tag)

    @classmethod
    def zero(cls, rows: int, cols: int) -> MatrixOp:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike], tag: SpaceTag | None = None) -> MatrixOp:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], tag, tag)

    def column(self, j: int) -> LatticeElement:
        return LatticeElement(row[j] for row in self.entries)

    def with_tags(self, domain_tag: SpaceTag, range_tag: SpaceTag) -> MatrixOp:
        return MatrixOp(self.entries, domain_tag, range_tag)

    def _combine(self, other: MatrixOp, sign: int) -> MatrixOp:
        if self.shape != other.shape:
            raise DimensionMismatchError(self.shape[1], other.shape[1], what="operators")
        return MatrixOp(
            [[a + sign * b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.domain_tag,
            self.range_tag,
        )

    def __add__(self, other: MatrixOp) -> MatrixOp:
        return self._combine(other, 1)

    def __sub__(self, other: MatrixOp) -> MatrixOp:
        return self._combine(other, -1)

    def __neg__(self) -> MatrixOp:
        return self.scale(-1)

    def scale(self, factor: RationalLike) -> MatrixOp:
        c = to_rational(factor)
        return MatrixOp([[c * a for a in row] for row in self.entries], self.domain_tag, self.range_tag)

    def to_json(self) -> dict[str, Any]:
        return {
            "entries": [[format_rational(a) for a in row] for row in self.entries],
            "domain": self.domain_tag.to_json(),
            "range": self.range_tag.to_json(),
        }

    @classmethod
    def from_json(cls, payload: Mapping[str, Any] | Sequence[Sequence[RationalLike]]) -> MatrixOp:
        """Parse a bare 2-D array of rational strings or ``{"entries", "domain", "range"}``."""
        if isinstance(payload, Mapping):
            domain = SpaceTag.from_json(payload["domain"]) if "domain" in payload else None
            range_ = SpaceTag.from_json(payload["range"]) if "range" in payload else None
            return cls(payload["entries"], domain, range_)
        return cls(payload)

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(format_rational(a) for a in row) for row in self.entries)
        return f"MatrixOp[{rows}]"


@dataclass(frozen=True)
class RankOneOp:
    """The operator x -> f(x) y for an explicit coordinate functional f and a target y.

    The target is a coordinate vector or a PWL function; a PWL target maps into PwlSup unless a PWL
    range tag is given, and has no matrix.
    """

    functional: tuple[Fraction, ...]
    target: LatticeElement | PwlFunc
    domain_tag: SpaceTag | None = None
    range_tag: SpaceTag | None = None

    def __init__(
        self,
        functional: Iterable[RationalLike],
        target: LatticeElement | PwlFunc,
        domain_tag: SpaceTag | None = None,
        range_tag: SpaceTag | None = None,
    ):
        coefficients = tuple(to_rational(a) for a in functional)
        if not coefficients:
            raise ValueError("A functional needs at least one coefficient")
        object.__setattr__(self, "functional", coefficients)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "domain_tag", _default_tag(len(coefficients), domain_tag))
        if isinstance(target, PwlFunc):
            range_tag = range_tag or SpaceTag.pwl_sup()
            if not range_tag.is_pwl:
                raise UnsupportedTagError(f"A PWL target needs a PWL range, got {range_tag.label}")
        else:
            range_tag = _default_tag(target.dim, range_tag)
        object.__setattr__(self, "range_tag", range_tag)

    def evaluate_functional(self, x: LatticeElement) -> Fraction:
        if x.dim != len(self.functional):
            raise DimensionMismatchError(x.dim, len(self.functional))
        return sum((a * b for a, b in zip(self.functional, x.coords)), Fraction(0))

    def to_matrix(self) -> MatrixOp:
        if isinstance(self.target, PwlFunc):
            raise UnsupportedTagError(f"A rank-one operator into {self.range_tag.label} has no matrix")
        return MatrixOp(
            [[y * a for a in self.functional] for y in self.target.coords], self.domain_tag, self.range_tag
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "functional": [format_rational(a) for a in self.functional],
            "target": self.target.to_json(),
        }


Operator = Union[MatrixOp, RankOneOp]


def as_matrix(T: Operator) -> MatrixOp:
    return T.to_matrix() if isinstance(T, RankOneOp) else T


def _mat_vec(T: MatrixOp, x: LatticeElement) -> LatticeElement:
    return LatticeElement(sum((a * b for a, b in zip(row, x.coords)), Fraction(0)) for row in T.entries)


def apply(T: Operator, x: Element) -> Element:
    """The exact image T x; product inputs and outputs are handled through their coordinate vectors."""
    vector = flatten(x)
    if isinstance(T, RankOneOp):
        image = element_scale(T.target, T.evaluate_functional(vector))
        return image if isinstance(image, PwlFunc) else unflatten(image, T.range_tag)
    if vector.dim != T.shape[1]:
        raise DimensionMismatchError(vector.dim, T.shape[1], what="input and operator domain")
    return unflatten(_mat_vec(T, vector), T.range_tag)


def is_positive(T: Operator) -> bool:
    """T(X+) is contained in Y+; for matrices on coordinatewise orders this means every entry >= 0."""
    if isinstance(T, RankOneOp):
        f = LatticeElement(T.functional)
        y = T.target
        if f.is_zero() or element_is_zero(y):
            return True
        return (f.is_positive() and element_is_positive(y)) or (
            (-f).is_positive() and element_is_positive(element_neg(y))
        )
    return all(a >= 0 for row in T.entries for a in row)


def positivity_witness(T: Operator) -> tuple[int, LatticeElement] | None:
    """(j, T e_j) for the first basis vector e_j >= 0 whose image is not positive, None if T >= 0."""
    T = as_matrix(T)
    for j in range(T.shape[1]):
        image = T.column(j)
        if not image.is_positive():
            return j, image
    return None


def modulus_matrix(T: Operator) -> MatrixOp:
    """|T| in closed form: the entrywise absolute value."""
    T = as_matrix(T)
    return MatrixOp([[abs(a) for a in row] for row in T.entries], T.domain_tag, T.range_tag)


def modulus_rk(T: Operator, x: Element, max_dim: int | ArgNotSet = NOTSET) -> LatticeElement:
    """|T|(x) = sup{|T u| : |u| <= x} by brute force over the extreme points of [-x, x].

    Only coordinates where x is nonzero are sign-flipped: the other coordinates of an extreme point are 0,
    so the enumeration visits 2^|supp x| <= 2^n sign patterns.

    Raises:
        NotPositiveError: x has a negative coordinate
        OracleGuardError: the domain dimension exceeds ``max_dim`` (RIESZ_LAB_ORACLE_MAX_DIM, 20)
    """
    T = as_matrix(T)
    vector = flatten(x)
    if max_dim is NOTSET:
        max_dim = Configuration.RIESZ_LAB_ORACLE_MAX_DIM
    if vector.dim != T.shape[1]:
        raise DimensionMismatchError(vector.dim, T.shape[1], what="input and operator domain")
    if not vector.is_positive():
        raise NotPositiveError(f"The Riesz-Kantorovich formula needs x >= 0, got {vector!r}")
    if T.shape[1] > max_dim:
        raise OracleGuardError(f"Oracle limited to dimension {max_dim}, operator has {T.shape[1]} columns")
    support = [i for i, c in enumerate(vector.coords) if c != 0]
    logger.debug("Enumerating %d sign patterns", 2 ** len(support))
    best = LatticeElement.zeros(T.shape[0])
    for signs in itertools.product((1, -1), repeat=len(support)):
        coords = list(vector.coords)
        for i, s in zip(support, signs):
            coords[i] = s * coords[i]
        best = join(best, abs_value(_mat_vec(T, LatticeElement(coords))))
    return best


def dominates(S: Operator, T: Operator) -> bool:
    """|T| <= |S|, decided entrywise on the modulus matrices."""
    return domination_witness(S, T) is None


def domination_witness(S: Operator, T: Operator) -> tuple[int, int] | None:
    """The first entry (i, j), 0-based, where |T| exceeds |S|; None when S dominates T."""
    S, T = as_matrix(S), as_matrix(T)
    if S.shape != T.shape:
        raise DimensionMismatchError(S.shape[1], T.shape[1], what="operators")
    for i, (row_s, row_t) in enumerate(zip(S.entries, T.entries)):
        for j, (a, b) in enumerate(zip(row_s, row_t)):
            if abs(b) > abs(a):
                return i, j
    return None


def operator_leq(S: Operator, T: Operator) -> bool:
    """S <= T in the operator order, i.e. T - S is positive."""
    return is_positive(as_matrix(T) - as_matrix(S))


def induced_norm(T: Operator) -> Fraction:
    """Exact operator norm for l1 -> l1 (max column sum) and l-inf -> l-inf (max row sum).

    Raises:
        UnsupportedTagError: any other pair of domain and range tags
    """
    T = as_matrix(T)
    kinds = (T.domain_tag.kind, T.range_tag.kind)
    if kinds == (SpaceKind.SeqL1, SpaceKind.SeqL1):
        m, n = T.shape
        return max(sum((abs(T.entries[i][j]) for i in range(m)), Fraction(0)) for j in range(n))
    if kinds == (SpaceKind.SeqLInf, SpaceKind.SeqLInf):
        return max(sum((abs(a) for a in row), Fraction(0)) for row in T.entries)
    raise UnsupportedTagError(
        f"Induced norms are implemented for SeqL1 -> SeqL1 and SeqLInf -> SeqLInf, "
        f"got {T.domain_tag.label} -> {T.range_tag.label}"
    )


def order_bounded_image(T: Operator, u: LatticeElement) -> tuple[LatticeElement, LatticeElement]:
    """The least symmetric order interval [lo, hi] containing T[-u, u]."""
    if not flatten(u).is_positive():
        raise NotPositiveError(f"Order intervals [-u, u] need u >= 0, got {u!r}")
    hi = flatten(apply(modulus_matrix(T), u))
    return -hi, hi


def basis_projection(n: int, dim: int, tag: SpaceTag | None = None) -> MatrixOp:
    """P_n: keeps the first n coordinates and zeroes the rest."""
    if not 1 <= n <= dim:
        raise ValueError(f"Projection index {n} outside 1..{dim}")
    return MatrixOp.diagonal([1 if i < n else 0 for i in range(dim)], tag)


def normalizing_functional(x0: LatticeElement) -> tuple[Fraction, ...]:
    """An explicit positive functional f with f(x0) = 1: (1 / x0_i) e_i on the first x0_i > 0."""
    for i, c in enumerate(x0.coords):
        if c > 0:
            return tuple(1 / c if j == i else Fraction(0) for j in range(x0.dim))
    raise ProbePreconditionError(f"{x0!r} has no strictly positive coordinate to normalize against")
