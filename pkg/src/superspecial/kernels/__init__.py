"""Backend dispatch for the integer kernels.

Two interchangeable implementations exist: a numba-jitted one
(``_numba_impl``) and a pure-numpy fallback (``_numpy_impl``).  The
active backend is chosen once, lazily, from the ``SUPERSPECIAL_BACKEND``
environment variable ("numba" or "numpy"); unset means numba when
importable, else numpy.  ``set_backend`` swaps at runtime, which the
benchmark and the cross-checking tests rely on.
"""

from __future__ import annotations

import importlib
import os

_VALID = ("numba", "numpy")
_impl = None
_name = None


def _load(name: str):
    return importlib.import_module(f"superspecial.kernels._{name}_impl")


def _select_default() -> str:
    want = os.environ.get("SUPERSPECIAL_BACKEND", "").strip().lower()
    if want:
        if want not in _VALID:
            raise ValueError(
                f"SUPERSPECIAL_BACKEND must be one of {_VALID}, got {want!r}"
            )
        return want
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        return "numpy"


def _backend():
    global _impl, _name
    if _impl is None:
        _name = _select_default()
        _impl = _load(_name)
    return _impl


def get_backend() -> str:
    """Name of the active backend ("numba" or "numpy")."""
    _backend()
    return _name


def set_backend(name: str) -> str:
    """Force a backend at runtime; returns the previously active name."""
    global _impl, _name
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {name!r}")
    prev = get_backend()
    if name != _name:
        _impl = _load(name)
        _name = name
    return prev


def kron(D, n):
    return _backend().kron(D, n)


def kron_batch(D, ns):
    return _backend().kron_batch(D, ns)


def class_count(D):
    return _backend().class_count(D)


def class_count_batch(discs):
    return _backend().class_count_batch(discs)


def dirichlet_sum(D):
    return _backend().dirichlet_sum(D)


def dirichlet_sum_batch(discs):
    return _backend().dirichlet_sum_batch(discs)


def matmul2k(A, B, k):
    return _backend().matmul2k(A, B, k)


def rank_mod2(A):
    return _backend().rank_mod2(A)


def snf_vals2k(A, k):
    return _backend().snf_vals2k(A, k)


def nullspace2k(A, k):
    return _backend().nullspace2k(A, k)


def inv2k(A, k):
    return _backend().inv2k(A, k)


def build_unimodular(n, k, ops):
    return _backend().build_unimodular(n, k, ops)


def split_case_a(W, k, p):
    return _backend().split_case_a(W, k, p)


def split_case_b(W, k, a1, a2):
    return _backend().split_case_b(W, k, a1, a2)
