from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.operators.matrix import MatrixOp
from riesz_lab.pwl.function import PwlFunc

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=8)
positive_rationals = st.fractions(min_value=0, max_value=4, max_denominator=8)


@st.composite
def elements(draw, dim: int | None = None, positive: bool = False) -> LatticeElement:
    dim = dim if dim is not None else draw(st.integers(min_value=1, max_value=6))
    scalars = positive_rationals if positive else rationals
    return LatticeElement(draw(st.lists(scalars, min_size=dim, max_size=dim)))


@st.composite
def element_triples(draw) -> tuple[LatticeElement, LatticeElement, LatticeElement]:
    dim = draw(st.integers(min_value=1, max_value=6))
    return draw(elements(dim)), draw(elements(dim)), draw(elements(dim))


@st.composite
def pwl_functions(draw, positive: bool = False) -> PwlFunc:
    inner = draw(
        st.lists(st.fractions(min_value=0, max_value=1, max_denominator=32), max_size=4, unique=True)
    )
    ts = sorted({Fraction(0), Fraction(1), *inner})
    scalars = positive_rationals if positive else rationals
    values = draw(st.lists(scalars, min_size=len(ts), max_size=len(ts)))
    return PwlFunc(zip(ts, values))


@st.composite
def matrices(draw, max_dim: int = 3) -> MatrixOp:
    m = draw(st.integers(min_value=1, max_value=max_dim))
    n = draw(st.integers(min_value=1, max_value=max_dim))
    return MatrixOp(draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=m, max_size=m)))


@st.composite
def matrices_with_positive_pairs(draw, max_dim: int = 3) -> tuple[MatrixOp, LatticeElement, LatticeElement]:
    T = draw(matrices(max_dim))
    n = T.shape[1]
    return T, draw(elements(n, positive=True)), draw(elements(n, positive=True))
