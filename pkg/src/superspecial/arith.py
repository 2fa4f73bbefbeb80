"""Exact integer and 2-adic residue primitives.

Kronecker symbols, deterministic primality, Hensel root lifting, and
F2-rank / Smith-form utilities for square matrices over Z/2^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import rank_mod2 as _rank_mod2_kernel
from .kernels import snf_vals2k as _snf_vals2k_kernel

K_MIN = 4
K_MAX = 60  # residues live in uint64 words; 2^k must divide 2^64

# Deterministic Miller-Rabin witness set for all n < 3.3e24 (covers 2^63).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D|n), totally multiplicative in n >= 1."""
    D = int(D)
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    res = 1
    if n % 2 == 0:
        if D % 2 == 0:
            return 0
        eps = 1 if D % 8 in (1, 7) else -1
        while n % 2 == 0:
            n //= 2
            res *= eps
    a = D % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2^63."""
    n = int(n)
    if n >= 1 << 63:
        raise ValueError("primality test supports n < 2^63 only")
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_k(k: int) -> int:
    k = int(k)
    if not K_MIN <= k <= K_MAX:
        raise ValueError(f"precision k must lie in [{K_MIN}, {K_MAX}], got {k}")
    return k


@dataclass(frozen=True, eq=False)
class ResidueMatrix:
    """Square matrix with entries canonically reduced into [0, 2^k)."""

    entries: np.ndarray
    k: int

    def __init__(self, entries, k: int):
        k = _check_k(k)
        mask = (1 << k) - 1
        rows = [[int(x) & mask for x in row] for row in entries]
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ValueError("entries must form a square matrix with n >= 1")
        arr = np.array(rows, dtype=np.uint64)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "k", k)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def to_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueMatrix):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.k, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"ResidueMatrix(n={self.n}, k={self.k})"


@dataclass(frozen=True)
class AlphaRoots:
    """The odd and even roots of X^2 + X + (1+p)/4 over Z/2^k."""

    alpha1: int
    alpha2: int
    k: int

    def __post_init__(self):
        _check_k(self.k)
        mod = 1 << self.k
        if self.alpha1 % 2 != 1:
            raise ValueError("alpha1 must be odd")
        if self.alpha2 % 2 != 0:
            raise ValueError("alpha2 must be even")
        if (self.alpha1 + self.alpha2) % mod != mod - 1:
            raise ValueError("roots must sum to -1 mod 2^k")


def hensel_alpha_roots(p: int, k: int) -> AlphaRoots:
    """Lift the two roots of X^2 + X + (1+p)/4 mod 2^k by Newton iteration.

    The derivative 2X+1 is a unit, so lifting from the residues 1 and 0
    mod 2 is unobstructed; the odd root is alpha1.
    """
    p = int(p)
    k = _check_k(k)
    if p % 8 != 7:
        raise ValueError("roots exist only for p = 7 mod 8")
    if not is_prime(p):
        raise ValueError("p must be prime")
    mod = 1 << k
    c = ((1 + p) // 4) % mod
    roots = []
    for seed in (1, 0):
        x = seed
        for _ in range(k.bit_length() + 3):
            fx = (x * x + x + c) % mod
            if fx == 0:
                break
            x = (x - fx * pow(2 * x + 1, -1, mod)) % mod
        if (x * x + x + c) % mod != 0:
            raise ArithmeticError("Newton iteration failed to converge")
        roots.append(x)
    a1, a2 = roots
    if (a1 * a2) % mod != c:
        raise ArithmeticError("lifted roots violate the product identity")
    return AlphaRoots(alpha1=a1, alpha2=a2, k=k)


def rank_mod2(m: ResidueMatrix) -> int:
    """Rank of the matrix reduced mod 2, over the field with two elements."""
    return int(_rank_mod2_kernel(m.entries))


def snf_mod2k(m: ResidueMatrix) -> tuple:
    """Sorted diagonal valuations of the Smith form over Z/2^k.

    Entries that vanish exactly mod 2^k report valuation math.inf.
    """
    vals = _snf_vals2k_kernel(m.entries, m.k)
    return tuple(int(v) if v < m.k else math.inf for v in vals)
