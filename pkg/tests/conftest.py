import functools

import pytest

from shiryaev_qsd import solve_lambda


@functools.lru_cache(maxsize=None)
def _solved(A: float):
    return solve_lambda(A)


@pytest.fixture(scope="session")
def solved():
    """Memoized solve_lambda so the many tests sharing a cutoff pay once."""
    return _solved
