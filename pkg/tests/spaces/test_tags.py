from __future__ import annotations

from fractions import Fraction

import pytest

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.pwl.function import PwlFunc
from riesz_lab.spaces.tags import (
    NeighborhoodSpec,
    ProductElement,
    SpaceKind,
    SpaceTag,
    make_product,
    parse_space,
)


@pytest.mark.parametrize(
    "spec, expected",
    [
        pytest.param("SeqLInf(8)", SpaceTag.seq_linf(8), id="sup norm label"),
        pytest.param("SeqL1(3)", SpaceTag.seq_l1(3), id="l1 label"),
        pytest.param("PwlSup", SpaceTag.pwl_sup(), id="pwl label"),
        pytest.param(
            "SeqLInf(2) x SeqL1(3)",
            make_product([SpaceTag.seq_linf(2), SpaceTag.seq_l1(3)]),
            id="product label",
        ),
        pytest.param(
            {"kind": "WeightedL1", "weights": ["1", "1/2"]},
            SpaceTag.weighted_l1([1, Fraction(1, 2)]),
            id="weighted json",
        ),
        pytest.param(
            {"kind": "Product", "factors": [{"kind": "PwlL1"}, {"kind": "SeqLInf", "dim": 2}]},
            make_product([SpaceTag.pwl_l1(), SpaceTag.seq_linf(2)]),
            id="product json",
        ),
    ],
)
def test_parse_space(spec, expected):
    assert parse_space(spec) == expected


def test_parse_space_resolves_declared_names():
    named = {"c0": SpaceTag.seq_linf(16)}
    assert parse_space("c0", named) == SpaceTag.seq_linf(16)
    assert parse_space("c0 x PwlSup", named) == make_product([SpaceTag.seq_linf(16), SpaceTag.pwl_sup()])


@pytest.mark.parametrize(
    "spec",
    [
        pytest.param("Hilbert(2)", id="unknown label"),
        pytest.param({"kind": "Banach"}, id="unknown kind"),
        pytest.param({"dim": 3}, id="missing kind"),
        pytest.param({"kind": "SeqL1", "dim": "3"}, id="string dimension"),
        pytest.param({"kind": "SeqL1"}, id="missing dimension"),
        pytest.param({"kind": "PwlSup", "dim": 2}, id="pwl with dimension"),
        pytest.param({"kind": "WeightedL1", "weights": ["1", "0"]}, id="zero weight"),
        pytest.param({"kind": "Product", "factors": []}, id="empty product"),
        pytest.param(3, id="not a spec"),
    ],
)
def test_parse_space_rejects(spec):
    with pytest.raises(ValueError):
        parse_space(spec)


def test_labels_and_json():
    tag = make_product([SpaceTag.seq_linf(2), SpaceTag.weighted_l1([1, "1/2"])])
    assert tag.label == "SeqLInf(2) x WeightedL1(2)"
    assert tag.to_json() == {
        "kind": "Product",
        "factors": [{"kind": "SeqLInf", "dim": 2}, {"kind": "WeightedL1", "weights": ["1", "1/2"]}],
    }
    assert SpaceTag.from_json(tag.to_json()) == tag
    assert tag.total_dim == 4
    assert make_product([SpaceTag.pwl_sup(), SpaceTag.seq_l1(2)]).total_dim is None


def test_conforms():
    tag = make_product([SpaceTag.seq_linf(2), SpaceTag.pwl_sup()])
    good = ProductElement([LatticeElement([1, 2]), PwlFunc.constant(1)])
    assert tag.conforms(good)
    assert not tag.conforms(ProductElement([LatticeElement([1, 2, 3]), PwlFunc.constant(1)]))
    assert not tag.conforms(LatticeElement([1, 2]))
    assert SpaceTag.seq_l1(2).conforms(LatticeElement([0, 0]))
    assert not SpaceTag.pwl_l1().conforms(LatticeElement([0]))
    assert SpaceTag(SpaceKind.SeqL1, 2).is_coordinate


def test_neighborhood_spec():
    product = make_product([SpaceTag.seq_linf(2), SpaceTag.seq_l1(2), SpaceTag.seq_l1(2)])
    U = NeighborhoodSpec.product({2: NeighborhoodSpec.ball(1), 0: NeighborhoodSpec.ball("1/2")})
    assert [i for i, _ in U.constraints] == [0, 2]
    assert U.conforms(product)
    assert not U.conforms(SpaceTag.seq_l1(2))
    assert not NeighborhoodSpec.product({3: NeighborhoodSpec.ball()}).conforms(product)
    assert NeighborhoodSpec.ball().conforms(SpaceTag.pwl_sup())
    assert NeighborhoodSpec.from_json(U.to_json()) == U
    assert U.to_json() == {"constraints": {"0": {"radius": "1/2"}, "2": {"radius": "1"}}}


@pytest.mark.parametrize(
    "kwargs",
    [
        pytest.param({"radius": 0}, id="zero radius"),
        pytest.param({}, id="empty"),
        pytest.param(
            {"radius": 1, "constraints": ((0, NeighborhoodSpec.ball()),)}, id="ball and constraints"
        ),
        pytest.param(
            {"constraints": ((0, NeighborhoodSpec.ball()), (0, NeighborhoodSpec.ball(2)))},
            id="repeated factor",
        ),
    ],
)
def test_invalid_neighborhoods(kwargs):
    with pytest.raises(ValueError):
        NeighborhoodSpec(**kwargs)
