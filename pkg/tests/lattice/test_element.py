from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from riesz_lab.lattice import (
    FiniteSet,
    LatticeElement,
    abs_pos_neg,
    abs_value,
    clamp,
    join,
    leq,
    meet,
    negate,
    to_rational,
)
from riesz_lab.lattice.rational import approx, dyadic, format_rational
from riesz_lab.utils.exceptions import DimensionMismatchError
from tests.strategies import element_triples, elements


def v(*coords) -> LatticeElement:
    return LatticeElement(coords)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        pytest.param(v(1, 0), v(0, 1), v(1, 1), id="disjoint basis vectors"),
        pytest.param(v(1, -2, 3), v(-1, 2, -3), v(1, 2, 3), id="opposite signs"),
        pytest.param(v(5, 5), v(5, 5), v(5, 5), id="idempotent"),
    ],
)
def test_join(x, y, expected):
    assert join(x, y) == expected


def test_meet():
    assert meet(v(1, 0), v(0, 1)) == v(0, 0)
    assert meet(v(1, -2), v(-1, 2)) == v(-1, -2)
    assert meet(v(1, -2), v(-1, 2)) == negate(join(v(-1, 2), v(1, -2)))


@pytest.mark.parametrize(
    "x, expected",
    [
        pytest.param(v(3, -4), (v(3, 4), v(3, 0), v(0, 4)), id="mixed signs"),
        pytest.param(v(0, 0), (v(0, 0), v(0, 0), v(0, 0)), id="zero"),
    ],
)
def test_abs_pos_neg(x, expected):
    assert abs_pos_neg(x) == expected


def test_leq():
    assert leq(v(0, 0), v(1, 1))
    assert not leq(v(1, 0), v(0, 1))
    assert not leq(v(0, 1), v(1, 0))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError, match="Incompatible spaces"):
        join(v(1, 2), v(1, 2, 3))
    with pytest.raises(DimensionMismatchError):
        leq(v(1), v(1, 2))


def test_zero_dimensional_elements_are_rejected():
    with pytest.raises(ValueError):
        LatticeElement([])


def test_constructors_and_arithmetic():
    assert LatticeElement.basis(1, 3) == v(0, 1, 0)
    assert LatticeElement.ones(2) + LatticeElement.zeros(2) == v(1, 1)
    assert v(1, 2) - v(3, 1) == v(-2, 1)
    assert v(1, -2).scale("1/2") == v(Fraction(1, 2), -1)
    with pytest.raises(ValueError):
        LatticeElement.basis(3, 3)


def test_clamp_lies_in_interval():
    assert clamp(v(5, -5, 0), v(-1, -1, -1), v(1, 1, 1)) == v(1, -1, 0)


def test_json_uses_rational_strings():
    x = v("1/3", -2, 0)
    assert x.to_json() == ["1/3", "-2", "0"]
    assert LatticeElement.from_json(x.to_json()) == x
    assert repr(x) == "(1/3, -2, 0)"


@pytest.mark.parametrize(
    "value, expected",
    [
        pytest.param(3, Fraction(3), id="int"),
        pytest.param("3/4", Fraction(3, 4), id="rational string"),
        pytest.param(" -2 ", Fraction(-2), id="padded integer string"),
        pytest.param(Fraction(1, 7), Fraction(1, 7), id="fraction"),
    ],
)
def test_to_rational(value, expected):
    assert to_rational(value) == expected


@pytest.mark.parametrize(
    "value, error",
    [
        pytest.param(0.5, TypeError, id="float"),
        pytest.param(True, TypeError, id="bool"),
        pytest.param("0.5", ValueError, id="decimal string"),
        pytest.param("1e3", ValueError, id="exponent string"),
        pytest.param("one", ValueError, id="garbage"),
    ],
)
def test_to_rational_rejects_inexact_values(value, error):
    with pytest.raises(error):
        to_rational(value)


def test_rational_rendering():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert dyadic(3) == Fraction(1, 8)
    assert approx(Fraction(1, 3)) == "~0.333333"


def test_finite_set_is_canonical():
    A = FiniteSet([v(0, 1), v(1, 0), v(0, 1)])
    assert len(A) == 2
    assert A == FiniteSet([v(1, 0), v(0, 1)])
    assert v(1, 0) in A
    assert A.negate() == FiniteSet([v(-1, 0), v(0, -1)])
    assert FiniteSet.from_json(A.to_json()) == A
    with pytest.raises(DimensionMismatchError):
        FiniteSet([v(1), v(1, 2)])


@given(element_triples())
def test_lattice_laws(triple):
    x, y, z = triple
    assert join(x, y) == join(y, x)
    assert join(join(x, y), z) == join(x, join(y, z))
    assert join(x, meet(x, y)) == x
    assert meet(x, join(y, z)) == join(meet(x, y), meet(x, z))
    assert meet(x, y) == negate(join(negate(x), negate(y)))
    assert join(x + z, y + z) == join(x, y) + z
    assert leq(meet(x, y), join(x, y))


@given(elements())
def test_riesz_decomposition(x):
    size, pos, neg = abs_pos_neg(x)
    assert x == pos - neg
    assert size == pos + neg == abs_value(x)
    assert meet(pos, neg).is_zero()
