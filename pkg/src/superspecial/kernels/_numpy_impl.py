"""Numpy implementations of the hot integer kernels.

All residue work is carried in uint64 words.  For k <= 60 the modulus 2^k
divides 2^64, so native wraparound arithmetic is exact once results are
masked back down; no arbitrary-precision escape hatch is needed here.
Discriminant sweeps stay within int64 (|D| < 2^31 keeps every intermediate,
including character sums bounded by D^2, far below 2^63).
"""

from __future__ import annotations

from math import isqrt

import numpy as np

BACKEND_NAME = "numpy"

_U1 = np.uint64(1)


def _mask(k: int) -> np.uint64:
    return np.uint64((1 << k) - 1)


def _inv_odd(u: int, k: int) -> int:
    return pow(int(u), -1, 1 << k)


# ---------------------------------------------------------------------------
# Kronecker symbol and discriminant sweeps
# ---------------------------------------------------------------------------

def kron(D: int, n: int) -> int:
    """Kronecker symbol (D|n) for n >= 1."""
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


def kron_batch(D: int, ns: np.ndarray) -> np.ndarray:
    """Vectorised Kronecker symbol (D|n) over an array of n >= 1."""
    n = np.asarray(ns, dtype=np.int64).copy()
    if n.size and n.min() < 1:
        raise ValueError("all n must be >= 1")
    res = np.ones(n.shape, dtype=np.int64)
    if D % 2 == 0:
        even = (n & 1) == 0
        res[even] = 0
        n[even] = 1
    else:
        eps = 1 if D % 8 in (1, 7) else -1
        while True:
            m = (n & 1) == 0
            if not m.any():
                break
            n[m] >>= 1
            if eps == -1:
                res[m] = -res[m]
    a = np.mod(D, n)
    while True:
        act = a != 0
        if not act.any():
            break
        m = act & ((a & 1) == 0)
        while m.any():
            a[m] >>= 1
            flip = m & (((n & 7) == 3) | ((n & 7) == 5))
            res[flip] = -res[flip]
            m = act & ((a & 1) == 0)
        flip = act & ((a & 3) == 3) & ((n & 3) == 3)
        res[flip] = -res[flip]
        safe = np.where(act, a, 1)
        a_new = np.where(act, np.mod(n, safe), a)
        n = np.where(act, a, n)
        a = a_new
    res[n != 1] = 0
    return res


def class_count(D: int) -> int:
    """Number of reduced primitive forms of discriminant D < 0."""
    absD = -int(D)
    a_max = isqrt(absD // 3)
    if a_max < 1:
        return 0
    a = np.arange(1, a_max + 1, dtype=np.int64)
    b0 = absD & 1
    counts = (a - b0) // 2 + 1
    A = np.repeat(a, counts)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    B = b0 + 2 * (np.arange(counts.sum(), dtype=np.int64) - np.repeat(starts, counts))
    num = B * B + absD
    keep = num % (4 * A) == 0
    A, B, num = A[keep], B[keep], num[keep]
    C = num // (4 * A)
    keep = C >= A
    A, B, C = A[keep], B[keep], C[keep]
    keep = np.gcd(np.gcd(A, B), C) == 1
    A, B, C = A[keep], B[keep], C[keep]
    boundary = (B == 0) | (B == A) | (A == C)
    return int(np.sum(np.where(boundary, 1, 2)))


def class_count_batch(discs: np.ndarray) -> np.ndarray:
    discs = np.asarray(discs, dtype=np.int64)
    out = np.empty(discs.shape, dtype=np.int64)
    for i, D in enumerate(discs):
        out[i] = class_count(int(D))
    return out


def dirichlet_sum(D: int) -> int:
    """Sum of kron(D, a) * a over 1 <= a < |D|."""
    absD = -int(D)
    if absD < 2:
        return 0
    a = np.arange(1, absD, dtype=np.int64)
    chi = kron_batch(D, a)
    return int(np.dot(chi, a))


def dirichlet_sum_batch(discs: np.ndarray) -> np.ndarray:
    discs = np.asarray(discs, dtype=np.int64)
    out = np.empty(discs.shape, dtype=np.int64)
    for i, D in enumerate(discs):
        out[i] = dirichlet_sum(int(D))
    return out


# ---------------------------------------------------------------------------
# Matrices over Z/2^k
# ---------------------------------------------------------------------------

def matmul2k(A: np.ndarray, B: np.ndarray, k: int) -> np.ndarray:
    return (A @ B) & _mask(k)


def rank_mod2(A: np.ndarray) -> int:
    M = (np.asarray(A, dtype=np.uint64) & _U1).astype(np.uint8)
    rows, cols = M.shape
    rank = 0
    for j in range(cols):
        piv = -1
        for i in range(rank, rows):
            if M[i, j]:
                piv = i
                break
        if piv < 0:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        hits = M[:, j] == 1
        hits[rank] = False
        M[hits] ^= M[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def _snf_core(A: np.ndarray, k: int, want_v: bool):
    """Diagonalise A over Z/2^k; returns (vals, V) with column ops in V.

    Pivots are chosen with minimal 2-adic valuation (ties row-major), so
    each pivot divides everything it eliminates and quotients are exact.
    Valuation k stands in for +infinity (entry exactly zero mod 2^k).
    """
    mask = _mask(k)
    M = (np.asarray(A, dtype=np.uint64) & mask).copy()
    n, m = M.shape
    V = np.eye(m, dtype=np.uint64) if want_v else None
    r = min(n, m)
    vals = np.full(r, k, dtype=np.int64)
    for t in range(r):
        sub = M[t:, t:]
        low = sub & (np.uint64(0) - sub)  # lowest set bit; 0 for zero entries
        vv = np.where(low == 0, float(k), np.log2(np.maximum(low, _U1)))
        flat = int(np.argmin(vv))  # argmin takes the first minimum, row-major
        v = int(vv.flat[flat])
        if v >= k:
            break
        bi = t + flat // (m - t)
        bj = t + flat % (m - t)
        if bi != t:
            M[[t, bi]] = M[[bi, t]]
        if bj != t:
            M[:, [t, bj]] = M[:, [bj, t]]
            if want_v:
                V[:, [t, bj]] = V[:, [bj, t]]
        vals[t] = v
        uinv = np.uint64(_inv_odd(int(M[t, t]) >> v, k))
        col = M[t + 1:, t]
        f = ((col >> np.uint64(v)) * uinv) & mask
        M[t + 1:, :] = (M[t + 1:, :] - np.outer(f, M[t, :])) & mask
        row = M[t, t + 1:]
        f = ((row >> np.uint64(v)) * uinv) & mask
        M[:, t + 1:] = (M[:, t + 1:] - np.outer(M[:, t], f)) & mask
        if want_v:
            V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], f)) & mask
    return vals, V


def snf_vals2k(A: np.ndarray, k: int) -> np.ndarray:
    """Sorted diagonal valuations of the Smith form of A over Z/2^k."""
    vals, _ = _snf_core(A, k, want_v=False)
    return np.sort(vals)


def nullspace2k(A: np.ndarray, k: int) -> np.ndarray:
    """Columns generating {x : A x == 0 mod 2^k exactly} (full-order part).

    Only directions annihilated at full precision are returned; scaled
    near-solutions (2^{k-v} V e_i with v < k) are deliberately excluded.
    """
    A = np.asarray(A, dtype=np.uint64)
    vals, V = _snf_core(A, k, want_v=True)
    n, m = A.shape
    cols = [V[:, i] for i in range(min(n, m)) if vals[i] == k]
    cols.extend(V[:, i] for i in range(min(n, m), m))
    if not cols:
        return np.zeros((m, 0), dtype=np.uint64)
    return np.stack(cols, axis=1)


def inv2k(A: np.ndarray, k: int):
    """(ok, inverse) of A over Z/2^k; ok is False when det is even."""
    mask = _mask(k)
    M = (np.asarray(A, dtype=np.uint64) & mask).copy()
    n = M.shape[0]
    I = np.eye(n, dtype=np.uint64)
    for t in range(n):
        piv = -1
        for i in range(t, n):
            if int(M[i, t]) & 1:
                piv = i
                break
        if piv < 0:
            return False, I
        if piv != t:
            M[[t, piv]] = M[[piv, t]]
            I[[t, piv]] = I[[piv, t]]
        uinv = np.uint64(_inv_odd(int(M[t, t]), k))
        M[t] = (M[t] * uinv) & mask
        I[t] = (I[t] * uinv) & mask
        f = M[:, t].copy()
        f[t] = 0
        M = (M - np.outer(f, M[t])) & mask
        I = (I - np.outer(f, I[t])) & mask
    return True, I


def build_unimodular(n: int, k: int, ops: np.ndarray) -> np.ndarray:
    """Product of elementary row operations (i,i,c): scale, (i,j,c): shear."""
    mask = _mask(k)
    U = np.eye(n, dtype=np.uint64)
    for i, j, c in np.asarray(ops, dtype=np.int64):
        cu = np.uint64(int(c) & ((1 << k) - 1))
        if i == j:
            U[i] = (U[i] * cu) & mask
        else:
            U[i] = (U[i] + cu * U[j]) & mask
    return U


# ---------------------------------------------------------------------------
# GF(2) incremental elimination used by the splitting searches
# ---------------------------------------------------------------------------

class _F2Basis:
    """Reduced row basis over GF(2): no stored row has a one at another
    stored row's pivot, so a single reduction pass decides membership."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[int, np.ndarray]] = []

    def insert(self, vec: np.ndarray) -> bool:
        v = (np.asarray(vec, dtype=np.uint64) & _U1).astype(np.uint8)
        for piv, row in self.rows:
            if v[piv]:
                v = v ^ row
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        q = int(nz[0])
        self.rows = [(piv, row ^ v if row[q] else row) for piv, row in self.rows]
        self.rows.append((q, v))
        return True

    def snapshot(self):
        return list(self.rows)

    def restore(self, snap):
        self.rows = snap


# ---------------------------------------------------------------------------
# Module splitting over Z_2 at working precision 2^k
# ---------------------------------------------------------------------------

def split_case_a(W: np.ndarray, k: int, p: int):
    """Basis columns splitting W into companion and halved-trace blocks.

    Pairs (x, w) are exact solutions of the joint system W x = 2 w,
    W w = -((p+1)/2) x - 2 w, so the block relations hold at full
    precision by construction rather than through a lossy division by 2.
    """
    mask = _mask(k)
    n = W.shape[0]
    modulus = 1 << k
    P = np.zeros((2 * n, 2 * n), dtype=np.uint64)
    P[:n, :n] = W
    P[:n, n:] = np.eye(n, dtype=np.uint64) * np.uint64((-2) % modulus)
    P[n:, :n] = np.eye(n, dtype=np.uint64) * np.uint64(((p + 1) // 2) % modulus)
    P[n:, n:] = (W + np.eye(n, dtype=np.uint64) * np.uint64(2)) & mask
    N = nullspace2k(P, k)

    basis = _F2Basis(n)
    for j in range(n):
        basis.insert(W[:, j])
    pairs = []
    for idx in range(N.shape[1]):
        x = N[:n, idx].copy()
        w = N[n:, idx].copy()
        snap = basis.snapshot()
        if basis.insert(x) and basis.insert(w):
            pairs.append((x, w))
        else:
            basis.restore(snap)
    s = len(pairs)

    free_basis = _F2Basis(n)
    free = [i for i in range(n) if free_basis.insert(W[:, i])]
    r = len(free)

    U = np.zeros((n, n), dtype=np.uint64)
    if 2 * (r + s) != n:
        return False, r, s, U
    col = 0
    for i in free:
        U[i, col] = 1
        U[:, col + 1] = W[:, i]
        col += 2
    for x, w in pairs:
        U[:, col] = x
        U[:, col + 1] = w
        col += 2
    return True, r, s, U


def split_case_b(W: np.ndarray, k: int, a1: int, a2: int):
    """Basis columns splitting W into companion blocks plus scalar blocks
    2*a1 (unit root doubled) and 2*a2."""
    mask = _mask(k)
    n = W.shape[0]
    modulus = 1 << k
    I = np.eye(n, dtype=np.uint64)
    N1 = nullspace2k((W - I * np.uint64((2 * a1) % modulus)) & mask, k)
    N2 = nullspace2k((W - I * np.uint64((2 * a2) % modulus)) & mask, k)

    basis = _F2Basis(n)
    for j in range(N1.shape[1]):
        basis.insert(N1[:, j])
    for j in range(N2.shape[1]):
        basis.insert(N2[:, j])
    free = []
    e = np.zeros(n, dtype=np.uint64)
    for i in range(n):
        e[:] = 0
        e[i] = 1
        if basis.insert(e):
            free.append(i)
    r = len(free)

    tail = _F2Basis(n)
    for i in free:
        e[:] = 0
        e[i] = 1
        tail.insert(e)
        tail.insert(W[:, i])
    ys = [N1[:, j].copy() for j in range(N1.shape[1]) if tail.insert(N1[:, j])]
    s = len(ys)
    zs = [N2[:, j].copy() for j in range(N2.shape[1]) if tail.insert(N2[:, j])]
    t = len(zs)

    U = np.zeros((n, n), dtype=np.uint64)
    if 2 * r + s + t != n:
        return False, r, s, t, U
    col = 0
    for i in free:
        U[i, col] = 1
        U[:, col + 1] = W[:, i]
        col += 2
    for y in ys:
        U[:, col] = y
        col += 1
    for z in zs:
        U[:, col] = z
        col += 1
    return True, r, s, t, U
