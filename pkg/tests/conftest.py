import numpy as np
import pytest
from hypothesis import settings

# Numba JIT compilation on first kernel use can take seconds; hypothesis
# deadlines would misfire on that.
settings.register_profile("numerics", deadline=None, max_examples=60)
settings.load_profile("numerics")


def rel_close(a, b, rtol):
    """Symmetric relative closeness for complex scalars; exact zeros match."""
    a, b = complex(a), complex(b)
    if a == b:
        return True
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def assert_rel_close(a, b, rtol, label=""):
    assert rel_close(a, b, rtol), f"{label}: {a} vs {b} (rtol={rtol})"


def random_complex_matrix(rng, n, scale=1.0):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240809)
