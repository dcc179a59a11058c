from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence, Union

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.lattice.rational import RationalLike, format_rational, to_rational
from riesz_lab.pwl.function import PwlFunc


class SpaceKind(str, Enum):
    """Named lattice-norm families."""

    SeqL1 = "SeqL1"
    SeqLInf = "SeqLInf"
    WeightedL1 = "WeightedL1"
    PwlSup = "PwlSup"
    PwlL1 = "PwlL1"
    Product = "Product"


COORDINATE_KINDS = {SpaceKind.SeqL1, SpaceKind.SeqLInf, SpaceKind.WeightedL1}
PWL_KINDS = {SpaceKind.PwlSup, SpaceKind.PwlL1}


@dataclass(frozen=True)
class SpaceTag:
    """A concrete Riesz space together with its norm or, for products, its product topology.

    Attributes:
        kind: the family the space belongs to
        dim: number of coordinates for coordinate lattices, None for PWL spaces and products
        weights: strictly positive weights of a WeightedL1 norm
        factors: factor spaces of a Product
    """

    kind: SpaceKind
    dim: int | None = None
    weights: tuple[Fraction, ...] = ()
    factors: tuple[SpaceTag, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        if self.kind in COORDINATE_KINDS:
            if self.dim is None or self.dim < 1:
                raise ValueError(f"{self.kind.value} needs a positive dimension")
        elif self.dim is not None:
            raise ValueError(f"{self.kind.value} does not take a dimension")
        if self.kind == SpaceKind.WeightedL1:
            weights = tuple(to_rational(w) for w in self.weights)
            if len(weights) != self.dim:
                raise ValueError("WeightedL1 needs exactly one weight per coordinate")
            if any(w <= 0 for w in weights):
                raise ValueError("WeightedL1 weights must be strictly positive")
            object.__setattr__(self, "weights", weights)
        elif self.weights:
            raise ValueError(f"{self.kind.value} does not take weights")
        if self.kind == SpaceKind.Product:
            if not self.factors:
                raise ValueError("A product needs at least one factor")
        elif self.factors:
            raise ValueError(f"{self.kind.value} does not take factors")

    @classmethod
    def seq_l1(cls, dim: int) -> SpaceTag:
        return cls(SpaceKind.SeqL1, dim)

    @classmethod
    def seq_linf(cls, dim: int) -> SpaceTag:
        return cls(SpaceKind.SeqLInf, dim)

    @classmethod
    def weighted_l1(cls, weights: Iterable[RationalLike]) -> SpaceTag:
        weights = tuple(weights)
        return cls(SpaceKind.WeightedL1, len(weights), weights=weights)

    @classmethod
    def pwl_sup(cls) -> SpaceTag:
        return cls(SpaceKind.PwlSup)

    @classmethod
    def pwl_l1(cls) -> SpaceTag:
        return cls(SpaceKind.PwlL1)

    @property
    def is_product(self) -> bool:
        return self.kind == SpaceKind.Product

    @property
    def is_pwl(self) -> bool:
        return self.kind in PWL_KINDS

    @property
    def is_coordinate(self) -> bool:
        return self.kind in COORDINATE_KINDS

    @property
    def is_norm_tag(self) -> bool:
        return not self.is_product

    @property
    def total_dim(self) -> int | None:
        """Number of scalar coordinates, None as soon as a PWL space is involved."""
        if self.is_coordinate:
            return self.dim
        if self.is_product:
            dims = [f.total_dim for f in self.factors]
            return None if None in dims else sum(dims)
        return None

    @property
    def label(self) -> str:
        if self.is_product:
            return " x ".join(f.label for f in self.factors)
        if self.dim is not None:
            return f"{self.kind.value}({self.dim})"
        return self.kind.value

    def conforms(self, x: Element) -> bool:
        if self.is_product:
            return (
                isinstance(x, ProductElement)
                and len(x.factors) == len(self.factors)
                and all(tag.conforms(f) for tag, f in zip(self.factors, x.factors))
            )
        if self.is_pwl:
            return isinstance(x, PwlFunc)
        return isinstance(x, LatticeElement) and x.dim == self.dim

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"kind": self.kind.value}
        if self.dim is not None and self.kind != SpaceKind.WeightedL1:
            payload["dim"] = self.dim
        if self.weights:
            payload["weights"] = [format_rational(w) for w in self.weights]
        if self.factors:
            payload["factors"] = [f.to_json() for f in self.factors]
        return payload

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> SpaceTag:
        """Parse ``{"kind": ..., "dim": ..., "weights": [...], "factors": [...]}``."""
        if not isinstance(payload, Mapping) or "kind" not in payload:
            raise ValueError("A space spec must be an object with a 'kind' key")
        try:
            kind = SpaceKind(payload["kind"])
        except ValueError:
            allowed = ", ".join(k.value for k in SpaceKind)
            raise ValueError(f"Unknown space kind {payload['kind']!r}; expected one of {allowed}") from None
        if kind == SpaceKind.WeightedL1:
            return cls.weighted_l1(payload.get("weights", []))
        if kind == SpaceKind.Product:
            return make_product([cls.from_json(f) for f in payload.get("factors", [])])
        dim = payload.get("dim")
        if dim is not None and (isinstance(dim, bool) or not isinstance(dim, int)):
            raise ValueError(f"Space dimension must be an integer, got {dim!r}")
        return cls(kind, dim)


_LABEL = re.compile(r"^(SeqL1|SeqLInf|PwlSup|PwlL1)(?:\((\d+)\))?$")


def parse_space(spec: str | Mapping[str, Any], named: Mapping[str, SpaceTag] | None = None) -> SpaceTag:
    """A SpaceTag from a JSON spec, a name declared in ``named``, or a label such as ``"SeqLInf(8)"``.

    Labels of products join their factors with ``" x "``; weighted spaces need the JSON form.
    """
    if isinstance(spec, Mapping):
        return SpaceTag.from_json(spec)
    if not isinstance(spec, str):
        raise ValueError(f"A space is a label, a declared name or an object, got {spec!r}")
    if named and spec in named:
        return named[spec]
    parts = [part.strip() for part in spec.split(" x ")]
    if len(parts) > 1:
        return make_product([parse_space(part, named) for part in parts])
    match = _LABEL.match(spec.strip())
    if match is None:
        raise ValueError(f"Cannot parse space {spec!r}; expected e.g. 'SeqLInf(8)' or 'PwlSup'")
    kind, dim = match.groups()
    return SpaceTag(SpaceKind(kind), int(dim) if dim is not None else None)


def make_product(tags: Sequence[SpaceTag]) -> SpaceTag:
    """The product of ``tags`` with product topology and pointwise (factorwise) ordering."""
    if not tags:
        raise ValueError("A product needs at least one factor")
    return SpaceTag(SpaceKind.Product, factors=tuple(tags))


@dataclass(frozen=True)
class ProductElement:
    """One element per factor of a Product tag."""

    factors: tuple[Element, ...]

    def __init__(self, factors: Iterable[Element]):
        object.__setattr__(self, "factors", tuple(factors))
        if not self.factors:
            raise ValueError("A product element needs at least one factor")

    def to_json(self) -> list[Any]:
        return [f.to_json() for f in self.factors]

    def __repr__(self) -> str:
        return f"<{', '.join(repr(f) for f in self.factors)}>"


Element = Union[LatticeElement, PwlFunc, ProductElement]


@dataclass(frozen=True)
class NeighborhoodSpec:
    """A solid zero neighborhood.

    For norm tags it is the closed ball of ``radius``. For products it constrains finitely many factors
    (0-based index to factor neighborhood) and leaves every other factor unconstrained.
    """

    radius: Fraction | None = None
    constraints: tuple[tuple[int, NeighborhoodSpec], ...] = ()

    def __post_init__(self):
        if self.radius is not None:
            radius = to_rational(self.radius)
            if radius <= 0:
                raise ValueError("Neighborhood radius must be positive")
            object.__setattr__(self, "radius", radius)
            if self.constraints:
                raise ValueError("A neighborhood is either a ball or a product of constraints")
        elif not self.constraints:
            raise ValueError("A neighborhood needs a radius or at least one factor constraint")
        indices = [i for i, _ in self.constraints]
        if len(set(indices)) != len(indices):
            raise ValueError("Each factor can be constrained at most once")
        object.__setattr__(self, "constraints", tuple(sorted(self.constraints, key=lambda c: c[0])))

    @classmethod
    def ball(cls, radius: RationalLike = 1) -> NeighborhoodSpec:
        return cls(radius=to_rational(radius))

    @classmethod
    def product(cls, constraints: Mapping[int, NeighborhoodSpec]) -> NeighborhoodSpec:
        return cls(constraints=tuple(constraints.items()))

    @classmethod
    def all_factors(cls, tag: SpaceTag, radius: RationalLike = 1) -> NeighborhoodSpec:
        """The neighborhood constraining every factor of a product to its ball of ``radius``."""
        return cls.product({i: cls.ball(radius) for i in range(len(tag.factors))})

    @property
    def is_ball(self) -> bool:
        return self.radius is not None

    @property
    def constraint_map(self) -> dict[int, NeighborhoodSpec]:
        return dict(self.constraints)

    def conforms(self, tag: SpaceTag) -> bool:
        if tag.is_product:
            return not self.is_ball and all(
                0 <= i < len(tag.factors) and spec.conforms(tag.factors[i]) for i, spec in self.constraints
            )
        return self.is_ball

    def to_json(self) -> dict[str, Any]:
        if self.is_ball:
            return {"radius": format_rational(self.radius)}
        return {"constraints": {str(i): spec.to_json() for i, spec in self.constraints}}

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> NeighborhoodSpec:
        if "radius" in payload:
            return cls.ball(payload["radius"])
        constraints = payload.get("constraints", {})
        return cls.product({int(i): cls.from_json(spec) for i, spec in constraints.items()})
