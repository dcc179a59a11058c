from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from unittest import mock

import pytest

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.pwl.function import PwlFunc
from riesz_lab.spaces.tags import SpaceKind
from riesz_lab.utils.serialization import canonical_dumps, config_digest, to_jsonable, write_atomically


@dataclass(frozen=True)
class _Pair:
    left: Fraction
    right: int


@pytest.mark.parametrize(
    "value, expected",
    [
        pytest.param(Fraction(-3, 4), "-3/4", id="fraction"),
        pytest.param(Fraction(4, 2), "2", id="integral fraction"),
        pytest.param(SpaceKind.SeqL1, "SeqL1", id="enum"),
        pytest.param((1, Fraction(1, 2)), [1, "1/2"], id="tuple"),
        pytest.param({2: Fraction(1, 3)}, {"2": "1/3"}, id="dict keys"),
        pytest.param(LatticeElement([1, "1/2"]), ["1", "1/2"], id="element"),
        pytest.param(PwlFunc.constant(1), [["0", "1"], ["1", "1"]], id="pwl"),
        pytest.param(_Pair(Fraction(1, 2), 3), {"left": "1/2", "right": 3}, id="dataclass"),
        pytest.param(None, None, id="none"),
        pytest.param(True, True, id="bool"),
    ],
)
def test_to_jsonable(value, expected):
    assert to_jsonable(value) == expected


@pytest.mark.parametrize("value", [0.5, object()])
def test_to_jsonable_rejects(value):
    with pytest.raises(TypeError):
        to_jsonable(value)


def test_canonical_dumps_is_key_order_independent():
    assert canonical_dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert canonical_dumps({"a": 1, "b": 2}) == canonical_dumps({"b": 2, "a": 1})
    assert canonical_dumps({"x": "é"}) == '{"x":"\\u00e9"}'
    assert json.loads(canonical_dumps({"a": 1}, indent=2)) == {"a": 1}


def test_config_digest():
    digest = config_digest({"seed": 1, "probes": []})
    assert len(digest) == 64
    assert digest == config_digest({"probes": [], "seed": 1})
    assert digest != config_digest({"probes": [], "seed": 2})


def test_write_atomically(tmp_path):
    target = tmp_path / "nested" / "out.json"
    write_atomically(target, "first\n")
    write_atomically(target, "second\n")
    assert target.read_text() == "second\n"
    assert os.listdir(target.parent) == ["out.json"]


def test_write_atomically_cleans_up_on_failure(tmp_path):
    target = tmp_path / "out.json"
    with mock.patch("riesz_lab.utils.serialization.os.replace", side_effect=OSError("disk full")):
        with pytest.raises(OSError, match="disk full"):
            write_atomically(target, "content")
    assert os.listdir(tmp_path) == []
