from __future__ import annotations

from fractions import Fraction

import pytest

from riesz_lab.diagnostics.families import (
    alternating_identity,
    c0_tails,
    constant,
    constant_operator,
    diagonal_mixture,
    geometric_diagonal,
    ramps,
    scaled_identity,
    stabilizing,
    tents,
)
from riesz_lab.diagnostics.report import ProbeVerdict
from riesz_lab.diagnostics.transfer import (
    domination_ideal_echo,
    operator_lebesgue_demo,
    operator_lebesgue_rank_one_demo,
    operator_levi_demo,
)
from riesz_lab.lattice.element import LatticeElement
from riesz_lab.pwl.function import tent_family
from riesz_lab.spaces.tags import SpaceTag
from riesz_lab.utils.exceptions import ProbePreconditionError


def test_rank_one_lift_of_stabilizing_family():
    report = operator_levi_demo(stabilizing((1, 2)), LatticeElement([1, 0]), 8)
    assert report.verdict == ProbeVerdict.holds
    witness = report.witnesses[0]
    assert witness["image"] == ["1", "2"]
    assert witness["functional"] == ["1", "0"]
    assert "T(x0) equals the family supremum" in report.notes


def test_constant_family_lifts_to_constant_operators():
    report = operator_levi_demo(constant([1, 1]), LatticeElement([0, 2]), 4)
    assert report.holds
    assert "the supremum operator equals T_1" in report.notes
    assert report.witnesses[0]["functional"] == ["0", "1/2"]


def test_symbolic_limit_of_geometric_diagonal():
    report = operator_levi_demo(geometric_diagonal(2), LatticeElement([1, 1]), 20)
    assert report.holds
    assert report.witnesses[0]["image"] == ["1", "1"]
    assert any("finite-stage supremum at k=20" in note for note in report.notes)


def test_operator_levi_needs_a_positive_coordinate():
    with pytest.raises(ProbePreconditionError):
        operator_levi_demo(stabilizing(), LatticeElement([0, 0]), 4)


@pytest.mark.parametrize(
    "family, tag",
    [
        pytest.param(scaled_identity(4), SpaceTag.seq_linf(4), id="scaled identity"),
        pytest.param(diagonal_mixture(4), SpaceTag.seq_l1(4), id="diagonal mixture"),
    ],
)
def test_uniform_convergence_to_zero(family, tag):
    report = operator_lebesgue_demo(family, tag, 30)
    assert report.verdict == ProbeVerdict.holds
    assert report.curve == [(k, Fraction(1, 2**k)) for k in range(1, 31)]
    assert report.witnesses[0]["induced_norm"] == "1/1073741824"


def test_order_unit_curve_matches_on_sup_norm():
    report = operator_lebesgue_demo(scaled_identity(4), SpaceTag.seq_linf(4), 30)
    assert report.curves["order_unit"] == report.curve


def test_slow_convergence_is_inconclusive():
    report = operator_lebesgue_demo(scaled_identity(4), SpaceTag.seq_linf(4), 10)
    assert report.verdict == ProbeVerdict.inconclusive


@pytest.mark.parametrize(
    "family, tag",
    [
        pytest.param(constant_operator(), SpaceTag.seq_linf(2), id="nonzero infimum"),
        pytest.param(alternating_identity(), SpaceTag.seq_linf(2), id="claimed increasing"),
        pytest.param(scaled_identity(4), SpaceTag.pwl_sup(), id="pwl space"),
    ],
)
def test_operator_lebesgue_preconditions(family, tag):
    with pytest.raises(ProbePreconditionError):
        operator_lebesgue_demo(family, tag, 8)


def test_domination_ideal_echo():
    report = domination_ideal_echo(trials=40, seed=3)
    assert report.verdict == ProbeVerdict.holds
    assert report.seed == 3


def test_rank_one_lift_of_c0_tails_converges_uniformly():
    report = operator_lebesgue_rank_one_demo(c0_tails(64), LatticeElement([1]), 32)
    assert report.verdict == ProbeVerdict.holds
    assert report.curve == [(k, Fraction(1, 2**k)) for k in range(1, 33)]
    assert report.curves["induced_norm"] == report.curve
    assert report.witnesses[0]["norm"] == "1/4294967296"
    assert "T_k(x0) = u_k and T_k >= 0 for every k <= 32" in report.notes


def test_rank_one_lift_of_tents_keeps_norm_one():
    report = operator_lebesgue_rank_one_demo(tents(), LatticeElement([1]), 64)
    assert report.verdict == ProbeVerdict.fails
    assert report.curve == [(k, Fraction(1)) for k in range(1, 65)]
    witness = report.witnesses[0]
    assert witness["image"] == tent_family(64).to_json()
    assert witness["operator"]["functional"] == ["1"]
    assert any(note.startswith("constant-norm certificate") for note in report.notes)


def test_rank_one_lift_scales_the_operator_norm_by_the_functional():
    report = operator_lebesgue_rank_one_demo(c0_tails(8), LatticeElement([0, 2]), 8)
    assert report.verdict == ProbeVerdict.inconclusive
    assert report.curve[0] == (1, Fraction(1, 2))
    assert report.curves["induced_norm"][0] == (1, Fraction(1, 4))
    assert report.notes[0].startswith("f = ")


@pytest.mark.parametrize(
    "family, x0",
    [
        pytest.param(c0_tails(8), LatticeElement([0, 0]), id="no positive coordinate"),
        pytest.param(ramps(), LatticeElement([1]), id="claimed increasing"),
        pytest.param(constant([1, 1], "decreasing"), LatticeElement([1]), id="nonzero infimum"),
    ],
)
def test_operator_lebesgue_rank_one_preconditions(family, x0):
    with pytest.raises(ProbePreconditionError):
        operator_lebesgue_rank_one_demo(family, x0, 8)
