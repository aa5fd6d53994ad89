import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from demidenko.core import SymmetricMatrix

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile("dev")

EXAMPLE_5X5 = [
    [0, 1, 0, 0, 0],
    [1, 0, 0, 1, 1],
    [0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0],
]


@pytest.fixture
def example_matrix():
    return SymmetricMatrix(EXAMPLE_5X5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_sym(rng, n, low=0, high=1, diag=False):
    a = rng.integers(low, high, size=(n, n), endpoint=True)
    a = np.triu(a, 0 if diag else 1)
    a = a + np.triu(a, 1).T
    return SymmetricMatrix(a)


@st.composite
def sym_matrices(draw, min_n=1, max_n=7, low=-3, high=3):
    n = draw(st.integers(min_n, max_n))
    flat = draw(st.lists(st.integers(low, high), min_size=n * n, max_size=n * n))
    a = np.array(flat, dtype=np.int64).reshape(n, n)
    a = np.triu(a) + np.triu(a, 1).T
    return SymmetricMatrix(a)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        status, text = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {text}")
