import random

import numpy as np
import pytest

from vlgidx._kernels import get_backend


def pytest_addoption(parser):
    parser.addoption(
        "--heavy-scale", action="store", default=None,
        help="override the acceptance corpus size in bytes (default 64 MiB)")


@pytest.fixture(params=["compiled", "pure"])
def any_backend(request):
    """Run a kernel test against both backends."""
    try:
        return get_backend(request.param)
    except ImportError:
        pytest.skip("compiled backend not built")


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def np_rng():
    return np.random.default_rng(1234)


def random_text(rand: random.Random, n: int, sigma: int) -> bytes:
    return bytes(rand.randrange(sigma) for _ in range(n))
