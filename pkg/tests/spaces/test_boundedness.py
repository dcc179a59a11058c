from __future__ import annotations

from fractions import Fraction

import pytest

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.spaces.boundedness import (
    CHECKPOINTS,
    ParametricFamily,
    element_size,
    gauge,
    is_bounded_in,
    is_order_bounded,
    neighborhood_contains,
    order_bound,
)
from riesz_lab.spaces.tags import NeighborhoodSpec, ProductElement, SpaceTag, make_product

PRODUCT = make_product([SpaceTag.seq_linf(2), SpaceTag.seq_linf(2)])
FIRST_FACTOR_ONLY = NeighborhoodSpec.product({0: NeighborhoodSpec.ball(1)})


def pair(a, b):
    return ProductElement([LatticeElement(a), LatticeElement(b)])


def test_finite_set_in_unit_sup_ball():
    A = [LatticeElement(c) for c in ([1, -1], ["1/2", 0], [0, 1], ["-3/4", "1/8"])]
    verdict = is_bounded_in(A, NeighborhoodSpec.ball(1), SpaceTag.seq_linf(2))
    assert verdict.holds
    assert verdict.scale == 1


def test_finite_set_scale_and_radius():
    A = [LatticeElement([1, 2, 3])]
    verdict = is_bounded_in(A, NeighborhoodSpec.ball(2), SpaceTag.seq_l1(3))
    assert verdict.scale == 3
    assert is_bounded_in([], NeighborhoodSpec.ball(), SpaceTag.seq_l1(3)).scale == 0


def test_growing_multiples_of_first_basis_vector_are_unbounded():
    family = ParametricFamily(
        name="k e1",
        member=lambda k: LatticeElement([k, 0, 0]),
        coordinate_bound=lambda k: LatticeElement([k, 0, 0]),
    )
    verdict = is_bounded_in(family, NeighborhoodSpec.ball(), SpaceTag.seq_l1(3))
    assert not verdict.holds
    assert verdict.witness["factor"] is None
    assert verdict.witness["coordinate"] == 0
    assert verdict.witness["curve"] == [(k, Fraction(k)) for k in CHECKPOINTS]


def test_bounded_family_reports_checkpoint_scale():
    family = ParametricFamily(
        name="shrinking",
        member=lambda k: LatticeElement([Fraction(1, k), -1]),
        coordinate_bound=lambda k: LatticeElement([1, 1]),
    )
    verdict = is_bounded_in(family, NeighborhoodSpec.ball(), SpaceTag.seq_linf(2))
    assert verdict.holds
    assert verdict.scale == 1


def test_product_family_needs_every_factor_bounded():
    family = ParametricFamily(
        name="second factor grows",
        member=lambda k: pair([1, 0], [k, 0]),
        coordinate_bound=lambda k: pair([1, 0], [k, 0]),
    )
    verdict = is_bounded_in(family, FIRST_FACTOR_ONLY, PRODUCT)
    assert not verdict.holds
    assert verdict.witness["factor"] == [1]
    assert verdict.witness["coordinate"] == 0

    bounded = ParametricFamily(
        name="both factors bounded",
        member=lambda k: pair([1, 0], [1, Fraction(1, k)]),
        coordinate_bound=lambda k: pair([1, 0], [1, 1]),
    )
    verdict = is_bounded_in(bounded, FIRST_FACTOR_ONLY, PRODUCT)
    assert verdict.holds
    assert verdict.scale == 1


def test_family_validation():
    no_bound = ParametricFamily(name="opaque", member=lambda k: LatticeElement([k]))
    with pytest.raises(ValueError, match="coordinate-bound"):
        is_bounded_in(no_bound, NeighborhoodSpec.ball(), SpaceTag.seq_l1(1))
    lying = ParametricFamily(
        name="lying", member=lambda k: LatticeElement([k]), coordinate_bound=lambda k: LatticeElement([1])
    )
    with pytest.raises(ValueError, match="not dominated"):
        is_bounded_in(lying, NeighborhoodSpec.ball(), SpaceTag.seq_l1(1))


def test_neighborhood_must_fit_the_space():
    with pytest.raises(ValueError):
        is_bounded_in([LatticeElement([1])], FIRST_FACTOR_ONLY, SpaceTag.seq_l1(1))


def test_gauge_ignores_unconstrained_factors():
    x = pair(["1/2", 0], [100, 100])
    assert gauge(x, FIRST_FACTOR_ONLY, PRODUCT) == Fraction(1, 2)
    assert neighborhood_contains(x, FIRST_FACTOR_ONLY, PRODUCT)
    assert element_size(x, PRODUCT) == 100


def test_order_bound():
    A = [LatticeElement([1, -3]), LatticeElement([-2, 1])]
    u = order_bound(A)
    assert u == LatticeElement([2, 3])
    assert is_order_bounded(A, u)
    assert not is_order_bounded(A, LatticeElement([2, 2]))
