from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from riesz_lab.pwl import (
    PwlFunc,
    disjoint_tents,
    pwl_abs,
    pwl_add,
    pwl_eval,
    pwl_join,
    pwl_l1_norm,
    pwl_leq,
    pwl_max_slope,
    pwl_meet,
    pwl_negate,
    pwl_scale,
    pwl_sup_norm,
    ramp_family,
    tent_family,
)
from tests.strategies import pwl_functions

IDENTITY = PwlFunc([(0, 0), (1, 1)])
FLIPPED = PwlFunc([(0, 1), (1, 0)])
TENT = PwlFunc([(0, 0), ("1/2", 1), (1, 0)])
GRID = [Fraction(i, 1000) for i in range(1001)]


def test_canonical_form_drops_collinear_breakpoints():
    f = PwlFunc([(0, 0), ("1/4", "1/4"), ("1/2", "1/2"), (1, 1)])
    assert f == IDENTITY
    assert f.breakpoints == ((0, 0), (1, 1))


@pytest.mark.parametrize(
    "breakpoints",
    [
        pytest.param([(0, 0)], id="single breakpoint"),
        pytest.param([("1/4", 0), (1, 0)], id="does not start at 0"),
        pytest.param([(0, 0), ("1/2", 0)], id="does not end at 1"),
        pytest.param([(0, 0), ("1/2", 1), ("1/2", 0), (1, 0)], id="repeated t"),
    ],
)
def test_invalid_breakpoints(breakpoints):
    with pytest.raises(ValueError):
        PwlFunc(breakpoints)


@pytest.mark.parametrize(
    "f, t, expected",
    [
        pytest.param(IDENTITY, Fraction(1, 3), Fraction(1, 3), id="identity ramp"),
        pytest.param(PwlFunc.constant(5), Fraction(2, 7), Fraction(5), id="constant"),
        pytest.param(TENT, Fraction(1, 4), Fraction(1, 2), id="tent"),
        pytest.param(TENT, Fraction(1), Fraction(0), id="right endpoint"),
    ],
)
def test_pwl_eval(f, t, expected):
    assert pwl_eval(f, t) == expected


def test_pwl_eval_outside_domain():
    with pytest.raises(ValueError):
        pwl_eval(IDENTITY, Fraction(3, 2))


def test_join_and_meet_of_crossing_ramps():
    upper = pwl_join(IDENTITY, FLIPPED)
    assert upper.breakpoints == ((0, 1), (Fraction(1, 2), Fraction(1, 2)), (1, 1))
    lower = pwl_meet(IDENTITY, FLIPPED)
    assert pwl_eval(lower, Fraction(1, 2)) == Fraction(1, 2)
    assert pwl_eval(lower, 0) == 0
    assert pwl_eval(lower, 1) == 0


def test_join_and_meet_are_idempotent():
    assert pwl_join(TENT, TENT) == TENT
    assert pwl_meet(TENT, TENT) == TENT


@pytest.mark.parametrize(
    "f, sup_norm, l1_norm",
    [
        pytest.param(IDENTITY, Fraction(1), Fraction(1, 2), id="ramp"),
        pytest.param(TENT, Fraction(1), Fraction(1, 2), id="tent"),
        pytest.param(PwlFunc.constant(1), Fraction(1), Fraction(1), id="constant"),
        pytest.param(PwlFunc([(0, -1), (1, 1)]), Fraction(1), Fraction(1, 2), id="sign change"),
    ],
)
def test_norms(f, sup_norm, l1_norm):
    assert pwl_sup_norm(f) == sup_norm
    assert pwl_l1_norm(f) == l1_norm


def test_arithmetic():
    assert pwl_negate(IDENTITY) == PwlFunc([(0, 0), (1, -1)])
    assert pwl_scale(TENT, 2) == PwlFunc([(0, 0), ("1/2", 2), (1, 0)])
    assert pwl_add(IDENTITY, FLIPPED) == PwlFunc.constant(1)
    assert pwl_abs(PwlFunc([(0, -1), (1, 1)])) == PwlFunc([(0, 1), ("1/2", 0), (1, 1)])
    assert pwl_max_slope(TENT) == 2


def test_order():
    assert pwl_leq(PwlFunc.constant(0), TENT)
    assert not pwl_leq(IDENTITY, FLIPPED)
    assert not pwl_leq(FLIPPED, IDENTITY)


def test_tent_family():
    assert tent_family(2).breakpoints == ((0, 1), (Fraction(1, 2), 0), (1, 0))
    for k in range(1, 65):
        smaller, larger = tent_family(k + 1), tent_family(k)
        assert pwl_leq(smaller, larger)
        assert all(pwl_eval(smaller, t) <= pwl_eval(larger, t) for t in GRID[::10])
        assert pwl_sup_norm(larger) == 1
    with pytest.raises(ValueError):
        tent_family(0)


def test_ramp_family():
    assert ramp_family(1) == IDENTITY
    for k in range(1, 65):
        assert pwl_leq(ramp_family(k), ramp_family(k + 1))
        assert pwl_max_slope(ramp_family(k)) == k
        assert pwl_sup_norm(ramp_family(k)) == 1


def test_disjoint_tents_have_unit_l1_norm():
    tents = disjoint_tents(4)
    assert [pwl_l1_norm(f) for f in tents] == [1, 1, 1, 1]
    assert pwl_l1_norm(pwl_join(tents[0], tents[1])) == 2
    assert pwl_meet(tents[0], tents[1]).is_zero()


def test_json():
    assert TENT.to_json() == [["0", "0"], ["1/2", "1"], ["1", "0"]]
    assert PwlFunc.from_json(TENT.to_json()) == TENT


@given(pwl_functions(), pwl_functions())
def test_envelopes_match_pointwise_extrema(f, g):
    upper, lower = pwl_join(f, g), pwl_meet(f, g)
    for t in GRID[::50]:
        assert pwl_eval(upper, t) == max(pwl_eval(f, t), pwl_eval(g, t))
        assert pwl_eval(lower, t) == min(pwl_eval(f, t), pwl_eval(g, t))
    assert lower == pwl_negate(pwl_join(pwl_negate(f), pwl_negate(g)))


@given(pwl_functions(positive=True), pwl_functions(positive=True))
def test_sup_norm_am_identity(f, g):
    assert pwl_sup_norm(pwl_join(f, g)) == max(pwl_sup_norm(f), pwl_sup_norm(g))
