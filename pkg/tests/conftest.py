from __future__ import annotations

from unittest import mock

import pytest

from riesz_lab.utils.configuration import Configuration


@pytest.fixture(autouse=True)
def unset_seed_override():
    """Tests run with the documented seed defaults whatever RIESZ_LAB_SEED says in the environment."""
    with mock.patch.object(Configuration, "RIESZ_LAB_SEED", None):
        yield


@pytest.fixture
def signed_matrix():
    from riesz_lab.operators.matrix import MatrixOp

    return MatrixOp([[1, -2], [-3, 4]])
