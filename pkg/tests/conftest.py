"""Shared fixtures: backend switching and random unimodular matrices."""

import numpy as np
import pytest

from superspecial import set_backend


@pytest.fixture
def numpy_backend():
    """Run the test body on the pure-numpy kernel backend, then restore."""
    prev = set_backend("numpy")
    yield
    set_backend(prev)


@pytest.fixture
def random_unimodular():
    """Factory producing a pseudorandom unimodular matrix mod 2^k.

    Built as a product of elementary shears and odd diagonal scalings, so the
    determinant is odd by construction.
    """

    def make(n, k, rng):
        mask = (1 << k) - 1
        u = np.eye(n, dtype=np.uint64)
        for _ in range(4 * n + 4):
            if rng.integers(4) == 0:
                i = int(rng.integers(n))
                u[i, :] *= np.uint64(2 * int(rng.integers(1 << (k - 1))) + 1)
            else:
                i = int(rng.integers(n))
                j = int(rng.integers(n))
                if i == j:
                    continue
                u[i, :] += np.uint64(int(rng.integers(1 << k))) * u[j, :]
            u &= np.uint64(mask)
        return u

    return make
