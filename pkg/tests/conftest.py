import numpy as np
import pytest

from dhindex import _kernels

BACKENDS = [_kernels.NUMPY] + ([_kernels.NUMBA] if _kernels.NUMBA is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda b: b.name)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def brute_index(table, n):
    """Smallest ell | n admitting some r with table[x] - r*x constant on cosets."""
    for ell in range(1, n + 1):
        if n % ell:
            continue
        for r in range(n):
            consts = {}
            if all(consts.setdefault(x % ell, (table[x] - r * x) % n) == (table[x] - r * x) % n
                   for x in range(n)):
                return ell
    raise AssertionError
