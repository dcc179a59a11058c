from __future__ import annotations

from fractions import Fraction

import pytest

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.pwl.function import PwlFunc
from riesz_lab.spaces.norms import into_unit_ball, norm, solidity_check
from riesz_lab.spaces.tags import SpaceTag, make_product
from riesz_lab.utils.exceptions import UnsupportedTagError

SIGNED = LatticeElement([1, -2, 3])


@pytest.fixture
def broken_norm():
    """|x_1 + ... + x_n|: a seminorm that ignores cancellation, hence not monotone in |x|."""

    def _norm(x, tag):
        return abs(sum(x.coords, Fraction(0)))

    return _norm


@pytest.mark.parametrize(
    "x, tag, expected",
    [
        pytest.param(SIGNED, SpaceTag.seq_l1(3), Fraction(6), id="l1"),
        pytest.param(SIGNED, SpaceTag.seq_linf(3), Fraction(3), id="sup"),
        pytest.param(SIGNED, SpaceTag.weighted_l1([1, "1/2", 2]), Fraction(8), id="weighted l1"),
        pytest.param(LatticeElement.zeros(3), SpaceTag.seq_l1(3), Fraction(0), id="zero"),
        pytest.param(PwlFunc([(0, -1), (1, 1)]), SpaceTag.pwl_sup(), Fraction(1), id="pwl sup"),
        pytest.param(PwlFunc([(0, -1), (1, 1)]), SpaceTag.pwl_l1(), Fraction(1, 2), id="pwl l1"),
    ],
)
def test_norm(x, tag, expected):
    assert norm(x, tag) == expected


def test_norm_rejects_products_and_foreign_elements():
    with pytest.raises(UnsupportedTagError):
        norm(SIGNED, make_product([SpaceTag.seq_l1(3)]))
    with pytest.raises(ValueError):
        norm(SIGNED, SpaceTag.seq_l1(2))
    with pytest.raises(ValueError):
        norm(SIGNED, SpaceTag.pwl_sup())


def test_into_unit_ball():
    tag = SpaceTag.seq_l1(3)
    assert norm(into_unit_ball(SIGNED, tag), tag) == 1
    small = LatticeElement(["1/4", 0, 0])
    assert into_unit_ball(small, tag) == small


@pytest.mark.parametrize(
    "tag",
    [
        pytest.param(SpaceTag.seq_l1(4), id="l1"),
        pytest.param(SpaceTag.seq_linf(4), id="sup"),
        pytest.param(SpaceTag.weighted_l1([1, 2, "1/3"]), id="weighted l1"),
        pytest.param(SpaceTag.pwl_sup(), id="pwl sup"),
        pytest.param(SpaceTag.pwl_l1(), id="pwl l1"),
    ],
)
def test_shipped_norms_are_solid(tag):
    verdict = solidity_check(tag, trials=300, seed=7)
    assert verdict.holds
    assert verdict.witness is None


def test_broken_norm_is_caught(broken_norm):
    verdict = solidity_check(SpaceTag.seq_l1(4), trials=500, seed=7, norm_fn=broken_norm)
    assert not verdict
    x, y = verdict.witness
    assert broken_norm(x, None) > broken_norm(y, None)
    assert all(abs(a) <= abs(b) for a, b in zip(x.coords, y.coords))


def test_solidity_check_is_reproducible():
    tag = SpaceTag.seq_linf(3)
    assert solidity_check(tag, 50, 11) == solidity_check(tag, 50, 11)


def test_solidity_check_rejects_products():
    with pytest.raises(UnsupportedTagError):
        solidity_check(make_product([SpaceTag.seq_l1(2)]), 10, 0)
