from __future__ import annotations

from riesz_lab.lattice.closure import (
    finite_inf,
    finite_sup,
    inf_closure,
    is_downward_directed,
    is_upward_directed,
    solid_hull_contains,
    sup_closure,
)
from riesz_lab.lattice.element import (
    FiniteSet,
    LatticeElement,
    abs_pos_neg,
    abs_value,
    clamp,
    join,
    leq,
    meet,
    negate,
)
from riesz_lab.lattice.rational import Rational, approx, format_rational, to_rational

__all__ = [
    "FiniteSet",
    "LatticeElement",
    "Rational",
    "abs_pos_neg",
    "abs_value",
    "approx",
    "clamp",
    "finite_inf",
    "finite_sup",
    "format_rational",
    "inf_closure",
    "is_downward_directed",
    "is_upward_directed",
    "join",
    "leq",
    "meet",
    "negate",
    "solid_hull_contains",
    "sup_closure",
    "to_rational",
]
