import time

import pytest

from pgrass.blockop import BlockOperator, Splitting
from pgrass.rng import make_rng, random_projection

SESSION_START = time.monotonic()


@pytest.fixture
def rng():
    return make_rng(20240817)


@pytest.fixture
def splitting():
    return Splitting(8, 8)


@pytest.fixture
def random_proj(rng, splitting):
    return random_projection(rng, splitting)


def random_block(rng, splitting, scale=1.0):
    n = splitting.total
    M = scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return BlockOperator.from_dense(M, splitting)
