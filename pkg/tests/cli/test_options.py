from __future__ import annotations

import pytest
from click.core import Argument, BadParameter, Command, Context

from riesz_lab.cli.options import (
    InvalidOption,
    validate_dims_option,
    validate_element_option,
    validate_param_option,
    validate_seed_option,
)
from riesz_lab.lattice.element import LatticeElement


def _call(validator, passed_value, expected_result):
    ctx = Context(Command("fake-command"))
    param = Argument(["--test-param"])
    if isinstance(expected_result, type) and issubclass(expected_result, Exception):
        with pytest.raises(expected_result):
            validator(ctx, param, passed_value)
    else:
        actual_result = validator(ctx, param, passed_value)
        assert expected_result == actual_result


@pytest.mark.parametrize(
    "passed_value, expected_result",
    [
        pytest.param([], {}, id="empty value"),
        pytest.param(["dim=4"], {"dim": 4}, id="a json value"),
        pytest.param(["fam=tents"], {"fam": "tents"}, id="a plain string"),
        pytest.param(["n_range=[2, 4]", "kind=SeqL1"], {"n_range": [2, 4], "kind": "SeqL1"}, id="multiple"),
        pytest.param(["threshold=1/8"], {"threshold": "1/8"}, id="a rational string"),
        pytest.param(["x0=a=b"], {"x0": "a=b"}, id="splits on the first equals sign"),
        pytest.param(["dim:4"], BadParameter, id="a bad value"),
        pytest.param(["dim=4", "K"], BadParameter, id="multiple value with a bad one"),
    ],
)
def test_validate_param_option(passed_value: list[str], expected_result):
    _call(validate_param_option, passed_value, expected_result)


@pytest.mark.parametrize(
    "passed_value, expected_result",
    [
        pytest.param(None, None, id="not given"),
        pytest.param("1..6", [1, 2, 3, 4, 5, 6], id="dotted range"),
        pytest.param("2-4", [2, 3, 4], id="dashed range"),
        pytest.param("2,4,8", [2, 4, 8], id="list"),
        pytest.param("8", [8], id="single dimension"),
        pytest.param("6..2", BadParameter, id="empty range"),
        pytest.param("0,2", BadParameter, id="zero dimension"),
        pytest.param("two", BadParameter, id="not a number"),
    ],
)
def test_validate_dims_option(passed_value: str | None, expected_result):
    _call(validate_dims_option, passed_value, expected_result)


@pytest.mark.parametrize(
    "passed_value, expected_result",
    [
        pytest.param(None, None, id="not given"),
        pytest.param("1,1", LatticeElement([1, 1]), id="comma separated"),
        pytest.param("1, 1/2, 0", LatticeElement([1, "1/2", 0]), id="rationals"),
        pytest.param('["2", "-1/3"]', LatticeElement([2, "-1/3"]), id="json array"),
        pytest.param("1,abc", BadParameter, id="not a rational"),
        pytest.param("[1,", BadParameter, id="broken json"),
    ],
)
def test_validate_element_option(passed_value: str | None, expected_result):
    _call(validate_element_option, passed_value, expected_result)


@pytest.mark.parametrize(
    "passed_value, expected_result",
    [
        pytest.param(None, None, id="not given"),
        pytest.param(0, 0, id="zero"),
        pytest.param(2**64 - 1, 2**64 - 1, id="largest seed"),
        pytest.param(2**64, BadParameter, id="too large"),
        pytest.param(-1, BadParameter, id="negative"),
    ],
)
def test_validate_seed_option(passed_value: int | None, expected_result):
    _call(validate_seed_option, passed_value, expected_result)


def test_invalid_option_exits_with_validation_code():
    assert InvalidOption("bad").exit_code == 1
    assert issubclass(InvalidOption, BadParameter)
