"""Numba implementations of the hot integer kernels.

Scalar-loop twins of the numpy fallback in ``_numpy_impl``; the two
backends are cross-checked in the test suite.  Residues live in uint64
words (exact for k <= 60 because 2^k | 2^64), sweep arithmetic in int64.
Character values are filled through a smallest-prime-factor sieve, using
that the symbol is totally multiplicative in its lower argument.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND_NAME = "numba"

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U2 = np.uint64(2)


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _kron_scalar(D, n):
    res = 1
    if n % 2 == 0:
        if D % 2 == 0:
            return 0
        d8 = D % 8
        if d8 < 0:
            d8 += 8
        eps = 1 if (d8 == 1 or d8 == 7) else -1
        while n % 2 == 0:
            n //= 2
            res *= eps
    a = D % n
    if a < 0:
        a += n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            n8 = n % 8
            if n8 == 3 or n8 == 5:
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    if n != 1:
        return 0
    return res


def kron(D: int, n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return int(_kron_scalar(np.int64(D), np.int64(n)))


@njit(cache=True)
def _kron_batch(D, ns):
    out = np.empty(ns.shape[0], np.int64)
    for i in range(ns.shape[0]):
        out[i] = _kron_scalar(D, ns[i])
    return out


def kron_batch(D: int, ns: np.ndarray) -> np.ndarray:
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    if ns.size and ns.min() < 1:
        raise ValueError("all n must be >= 1")
    return _kron_batch(np.int64(D), ns)


@njit(cache=True)
def _class_count(D):
    absD = -D
    h = 0
    a = 1
    while 3 * a * a <= absD:
        b = absD & 1
        while b <= a:
            num = b * b + absD
            if num % (4 * a) == 0:
                c = num // (4 * a)
                if c >= a and _gcd(_gcd(a, b), c) == 1:
                    if b == 0 or b == a or a == c:
                        h += 1
                    else:
                        h += 2
            b += 2
        a += 1
    return h


def class_count(D: int) -> int:
    return int(_class_count(np.int64(D)))


@njit(cache=True)
def _class_count_batch(discs):
    out = np.empty(discs.shape[0], np.int64)
    for i in range(discs.shape[0]):
        out[i] = _class_count(discs[i])
    return out


def class_count_batch(discs: np.ndarray) -> np.ndarray:
    return _class_count_batch(np.ascontiguousarray(discs, dtype=np.int64))


@njit(cache=True)
def _spf_sieve(n):
    spf = np.zeros(n, np.int32)
    for i in range(2, n):
        if spf[i] == 0:
            for j in range(i, n, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


@njit(cache=True)
def _dirichlet_sum_batch(discs):
    m = np.int64(0)
    for i in range(discs.shape[0]):
        if -discs[i] > m:
            m = -discs[i]
    out = np.empty(discs.shape[0], np.int64)
    if m < 2:
        for i in range(discs.shape[0]):
            out[i] = 0
        return out
    spf = _spf_sieve(m + 1)
    chi = np.zeros(m + 1, np.int8)
    for idx in range(discs.shape[0]):
        D = discs[idx]
        absD = -D
        total = np.int64(0)
        for a in range(1, absD):
            if a == 1:
                c = np.int8(1)
            else:
                q = np.int64(spf[a])
                if q == a:
                    c = np.int8(_kron_scalar(D, a))
                else:
                    c = chi[q] * chi[a // q]
            chi[a] = c
            total += np.int64(c) * a
        out[idx] = total
    return out


def dirichlet_sum(D: int) -> int:
    return int(_dirichlet_sum_batch(np.array([D], dtype=np.int64))[0])


def dirichlet_sum_batch(discs: np.ndarray) -> np.ndarray:
    return _dirichlet_sum_batch(np.ascontiguousarray(discs, dtype=np.int64))


# ---------------------------------------------------------------------------
# Matrices over Z/2^k
# ---------------------------------------------------------------------------

@njit(cache=True)
def _inv_odd64(u):
    # Newton doubling: 3 correct bits seed, five rounds reach 96 > 64
    x = u
    for _ in range(5):
        x = x * (_U2 - u * x)
    return x


@njit(cache=True)
def _matmul2k(A, B, k):
    mask = (_U1 << np.uint64(k)) - _U1
    n = A.shape[0]
    m = B.shape[1]
    inner = A.shape[1]
    C = np.empty((n, m), np.uint64)
    for i in range(n):
        for j in range(m):
            acc = _U0
            for l in range(inner):
                acc += A[i, l] * B[l, j]
            C[i, j] = acc & mask
    return C


def matmul2k(A: np.ndarray, B: np.ndarray, k: int) -> np.ndarray:
    return _matmul2k(np.ascontiguousarray(A, dtype=np.uint64),
                     np.ascontiguousarray(B, dtype=np.uint64), k)


@njit(cache=True)
def _rank_mod2(A):
    rows, cols = A.shape
    M = np.empty((rows, cols), np.uint8)
    for i in range(rows):
        for j in range(cols):
            M[i, j] = np.uint8(A[i, j] & _U1)
    rank = 0
    for j in range(cols):
        piv = -1
        for i in range(rank, rows):
            if M[i, j]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for jj in range(cols):
                tmp = M[rank, jj]
                M[rank, jj] = M[piv, jj]
                M[piv, jj] = tmp
        for i in range(rows):
            if i != rank and M[i, j]:
                for jj in range(cols):
                    M[i, jj] ^= M[rank, jj]
        rank += 1
        if rank == rows:
            break
    return rank


def rank_mod2(A: np.ndarray) -> int:
    return int(_rank_mod2(np.ascontiguousarray(A, dtype=np.uint64)))


@njit(cache=True)
def _val2(x, k):
    if x == _U0:
        return k
    v = 0
    while (x & _U1) == _U0:
        x >>= _U1
        v += 1
    return v


@njit(cache=True)
def _snf_core(A, k, want_v):
    mask = (_U1 << np.uint64(k)) - _U1
    n, m = A.shape
    M = np.empty((n, m), np.uint64)
    for i in range(n):
        for j in range(m):
            M[i, j] = A[i, j] & mask
    V = np.eye(m, dtype=np.uint64)
    r = min(n, m)
    vals = np.full(r, k, np.int64)
    for t in range(r):
        best_v = k
        bi = -1
        bj = -1
        for i in range(t, n):
            for j in range(t, m):
                v = _val2(M[i, j], k)
                if v < best_v:
                    best_v = v
                    bi = i
                    bj = j
            if best_v == 0:
                break
        if bi < 0:
            break
        if bi != t:
            for jj in range(m):
                tmp = M[t, jj]
                M[t, jj] = M[bi, jj]
                M[bi, jj] = tmp
        if bj != t:
            for ii in range(n):
                tmp = M[ii, t]
                M[ii, t] = M[ii, bj]
                M[ii, bj] = tmp
            if want_v:
                for ii in range(m):
                    tmp = V[ii, t]
                    V[ii, t] = V[ii, bj]
                    V[ii, bj] = tmp
        v = best_v
        vals[t] = v
        uinv = _inv_odd64(M[t, t] >> np.uint64(v)) & mask
        for i in range(t + 1, n):
            f = ((M[i, t] >> np.uint64(v)) * uinv) & mask
            if f != _U0:
                for jj in range(m):
                    M[i, jj] = (M[i, jj] - f * M[t, jj]) & mask
        for j in range(t + 1, m):
            f = ((M[t, j] >> np.uint64(v)) * uinv) & mask
            if f != _U0:
                for ii in range(n):
                    M[ii, j] = (M[ii, j] - f * M[ii, t]) & mask
                if want_v:
                    for ii in range(m):
                        V[ii, j] = (V[ii, j] - f * V[ii, t]) & mask
    return vals, V


def snf_vals2k(A: np.ndarray, k: int) -> np.ndarray:
    vals, _ = _snf_core(np.ascontiguousarray(A, dtype=np.uint64), k, False)
    return np.sort(vals)


@njit(cache=True)
def _nullspace2k(A, k):
    n, m = A.shape
    vals, V = _snf_core(A, k, True)
    r = min(n, m)
    cnt = 0
    for i in range(r):
        if vals[i] == k:
            cnt += 1
    cnt += m - r
    N = np.empty((m, cnt), np.uint64)
    c = 0
    for i in range(r):
        if vals[i] == k:
            for row in range(m):
                N[row, c] = V[row, i]
            c += 1
    for i in range(r, m):
        for row in range(m):
            N[row, c] = V[row, i]
        c += 1
    return N


def nullspace2k(A: np.ndarray, k: int) -> np.ndarray:
    return _nullspace2k(np.ascontiguousarray(A, dtype=np.uint64), k)


@njit(cache=True)
def _inv2k(A, k):
    mask = (_U1 << np.uint64(k)) - _U1
    n = A.shape[0]
    M = np.empty((n, n), np.uint64)
    for i in range(n):
        for j in range(n):
            M[i, j] = A[i, j] & mask
    I = np.eye(n, dtype=np.uint64)
    for t in range(n):
        piv = -1
        for i in range(t, n):
            if (M[i, t] & _U1) == _U1:
                piv = i
                break
        if piv < 0:
            return False, I
        if piv != t:
            for jj in range(n):
                tmp = M[t, jj]
                M[t, jj] = M[piv, jj]
                M[piv, jj] = tmp
                tmp = I[t, jj]
                I[t, jj] = I[piv, jj]
                I[piv, jj] = tmp
        uinv = _inv_odd64(M[t, t]) & mask
        for jj in range(n):
            M[t, jj] = (M[t, jj] * uinv) & mask
            I[t, jj] = (I[t, jj] * uinv) & mask
        for i in range(n):
            if i != t:
                f = M[i, t]
                if f != _U0:
                    for jj in range(n):
                        M[i, jj] = (M[i, jj] - f * M[t, jj]) & mask
                        I[i, jj] = (I[i, jj] - f * I[t, jj]) & mask
    return True, I


def inv2k(A: np.ndarray, k: int):
    ok, inv = _inv2k(np.ascontiguousarray(A, dtype=np.uint64), k)
    return bool(ok), inv


@njit(cache=True)
def _build_unimodular(n, k, ops):
    mask = (_U1 << np.uint64(k)) - _U1
    U = np.eye(n, dtype=np.uint64)
    for l in range(ops.shape[0]):
        i = ops[l, 0]
        j = ops[l, 1]
        c = np.uint64(ops[l, 2]) & mask
        if i == j:
            for jj in range(n):
                U[i, jj] = (U[i, jj] * c) & mask
        else:
            for jj in range(n):
                U[i, jj] = (U[i, jj] + c * U[j, jj]) & mask
    return U


def build_unimodular(n: int, k: int, ops: np.ndarray) -> np.ndarray:
    return _build_unimodular(n, k, np.ascontiguousarray(ops, dtype=np.int64))


# ---------------------------------------------------------------------------
# GF(2) incremental reduced basis (rows clear at each other's pivots)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _f2_insert(rows, pivs, cnt, vec):
    """Try to add vec (mod 2) to the basis; returns new count (== cnt if
    dependent).  Mutates rows/pivs in place."""
    n = rows.shape[1]
    v = np.empty(n, np.uint8)
    for j in range(n):
        v[j] = np.uint8(vec[j] & _U1)
    for i in range(cnt):
        if v[pivs[i]]:
            for j in range(n):
                v[j] ^= rows[i, j]
    q = -1
    for j in range(n):
        if v[j]:
            q = j
            break
    if q < 0:
        return cnt
    for i in range(cnt):
        if rows[i, q]:
            for j in range(n):
                rows[i, j] ^= v[j]
    for j in range(n):
        rows[cnt, j] = v[j]
    pivs[cnt] = q
    return cnt + 1


# ---------------------------------------------------------------------------
# Module splitting over Z_2 at working precision 2^k
# ---------------------------------------------------------------------------

@njit(cache=True)
def _split_case_a(W, k, p):
    mask = (_U1 << np.uint64(k)) - _U1
    n = W.shape[0]
    P = np.zeros((2 * n, 2 * n), np.uint64)
    minus2 = (_U0 - _U2) & mask
    half = np.uint64((p + 1) // 2) & mask
    two = _U2 & mask
    for i in range(n):
        for j in range(n):
            P[i, j] = W[i, j]
            P[n + i, n + j] = W[i, j]
        P[i, n + i] = minus2
        P[n + i, i] = half
        P[n + i, n + i] = (P[n + i, n + i] + two) & mask
    N = _nullspace2k(P, k)

    rows = np.zeros((n, n), np.uint8)
    pivs = np.zeros(n, np.int64)
    cnt = 0
    for j in range(n):
        cnt = _f2_insert(rows, pivs, cnt, W[:, j])
    ncols = N.shape[1]
    px = np.zeros((n, n), np.uint64)  # accepted pair columns, interleaved
    s = 0
    rows_bak = np.zeros((n, n), np.uint8)
    pivs_bak = np.zeros(n, np.int64)
    for idx in range(ncols):
        for i in range(n):
            pivs_bak[i] = pivs[i]
            for j in range(n):
                rows_bak[i, j] = rows[i, j]
        cnt_bak = cnt
        c1 = _f2_insert(rows, pivs, cnt, N[:n, idx])
        ok_pair = False
        if c1 > cnt:
            c2 = _f2_insert(rows, pivs, c1, N[n:, idx])
            if c2 > c1:
                ok_pair = True
                cnt = c2
        if ok_pair:
            if 2 * s + 1 < n:
                for i in range(n):
                    px[i, 2 * s] = N[i, idx]
                    px[i, 2 * s + 1] = N[n + i, idx]
            s += 1
        else:
            cnt = cnt_bak
            for i in range(n):
                pivs[i] = pivs_bak[i]
                for j in range(n):
                    rows[i, j] = rows_bak[i, j]

    frows = np.zeros((n, n), np.uint8)
    fpivs = np.zeros(n, np.int64)
    fcnt = 0
    free = np.empty(n, np.int64)
    r = 0
    for i in range(n):
        c = _f2_insert(frows, fpivs, fcnt, W[:, i])
        if c > fcnt:
            fcnt = c
            free[r] = i
            r += 1

    U = np.zeros((n, n), np.uint64)
    if 2 * (r + s) != n:
        return False, r, s, U
    col = 0
    for fi in range(r):
        i = free[fi]
        U[i, col] = _U1
        for row in range(n):
            U[row, col + 1] = W[row, i]
        col += 2
    for si in range(s):
        for row in range(n):
            U[row, col] = px[row, 2 * si]
            U[row, col + 1] = px[row, 2 * si + 1]
        col += 2
    return True, r, s, U


def split_case_a(W: np.ndarray, k: int, p: int):
    ok, r, s, U = _split_case_a(np.ascontiguousarray(W, dtype=np.uint64), k, p)
    return bool(ok), int(r), int(s), U


@njit(cache=True)
def _split_case_b(W, k, a1, a2):
    mask = (_U1 << np.uint64(k)) - _U1
    n = W.shape[0]
    M1 = np.empty((n, n), np.uint64)
    M2 = np.empty((n, n), np.uint64)
    d1 = np.uint64(2 * a1) & mask
    d2 = np.uint64(2 * a2) & mask
    for i in range(n):
        for j in range(n):
            M1[i, j] = W[i, j]
            M2[i, j] = W[i, j]
        M1[i, i] = (M1[i, i] - d1) & mask
        M2[i, i] = (M2[i, i] - d2) & mask
    N1 = _nullspace2k(M1, k)
    N2 = _nullspace2k(M2, k)

    rows = np.zeros((n, n), np.uint8)
    pivs = np.zeros(n, np.int64)
    cnt = 0
    for j in range(N1.shape[1]):
        cnt = _f2_insert(rows, pivs, cnt, N1[:, j])
    for j in range(N2.shape[1]):
        cnt = _f2_insert(rows, pivs, cnt, N2[:, j])
    free = np.empty(n, np.int64)
    r = 0
    e = np.zeros(n, np.uint64)
    for i in range(n):
        for j in range(n):
            e[j] = _U0
        e[i] = _U1
        c = _f2_insert(rows, pivs, cnt, e)
        if c > cnt:
            cnt = c
            free[r] = i
            r += 1

    trows = np.zeros((n, n), np.uint8)
    tpivs = np.zeros(n, np.int64)
    tcnt = 0
    for fi in range(r):
        i = free[fi]
        for j in range(n):
            e[j] = _U0
        e[i] = _U1
        tcnt = _f2_insert(trows, tpivs, tcnt, e)
        tcnt = _f2_insert(trows, tpivs, tcnt, W[:, i])
    ys = np.zeros((n, n), np.uint64)
    s = 0
    for j in range(N1.shape[1]):
        c = _f2_insert(trows, tpivs, tcnt, N1[:, j])
        if c > tcnt:
            tcnt = c
            if s < n:
                for row in range(n):
                    ys[row, s] = N1[row, j]
            s += 1
    zs = np.zeros((n, n), np.uint64)
    t = 0
    for j in range(N2.shape[1]):
        c = _f2_insert(trows, tpivs, tcnt, N2[:, j])
        if c > tcnt:
            tcnt = c
            if t < n:
                for row in range(n):
                    zs[row, t] = N2[row, j]
            t += 1

    U = np.zeros((n, n), np.uint64)
    if 2 * r + s + t != n:
        return False, r, s, t, U
    col = 0
    for fi in range(r):
        i = free[fi]
        U[i, col] = _U1
        for row in range(n):
            U[row, col + 1] = W[row, i]
        col += 2
    for si in range(s):
        for row in range(n):
            U[row, col] = ys[row, si]
        col += 1
    for ti in range(t):
        for row in range(n):
            U[row, col] = zs[row, ti]
        col += 1
    return True, r, s, t, U


def split_case_b(W: np.ndarray, k: int, a1: int, a2: int):
    ok, r, s, t, U = _split_case_b(np.ascontiguousarray(W, dtype=np.uint64),
                                   k, a1, a2)
    return bool(ok), int(r), int(s), int(t), U
