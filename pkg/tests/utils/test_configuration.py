from __future__ import annotations

from unittest import mock

import pytest

from riesz_lab.utils.configuration import Configuration, _parse_seed, resolve_seed


@pytest.mark.parametrize(
    "flag, env_seed, config_seed, expected",
    [
        pytest.param(1, 2, 3, 1, id="flag wins"),
        pytest.param(None, 2, 3, 2, id="environment beats config"),
        pytest.param(None, None, 3, 3, id="config seed"),
        pytest.param(None, None, None, 0xA11CE, id="default"),
        pytest.param(0, 2, 3, 0, id="zero is a seed"),
    ],
)
def test_resolve_seed(flag, env_seed, config_seed, expected):
    with mock.patch.object(Configuration, "RIESZ_LAB_SEED", env_seed):
        assert resolve_seed(flag, config_seed) == expected


@pytest.mark.parametrize(
    "raw, expected",
    [
        pytest.param(None, None, id="unset"),
        pytest.param("", None, id="empty"),
        pytest.param("42", 42, id="decimal"),
        pytest.param("0x10", 16, id="hex"),
    ],
)
def test_parse_seed(raw, expected):
    assert _parse_seed(raw) == expected
