"""Canonical decomposition of 2-adic modules over the order with
omega^2 + 2*omega + (1+p) = 0.

A module is carried as the matrix W of the omega-action on a Z2-basis,
truncated to Z/2^k.  Two residue classes of p behave differently: for
p = 3 mod 8 ("case a") the quadratic extension is unramified at 2 and
modules split into companion blocks plus rank-2 maximal-order blocks;
for p = 7 mod 8 ("case b") the polynomial splits and modules decompose
into companion blocks plus two kinds of scalar blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import kernels
from .arith import (
    ResidueMatrix,
    hensel_alpha_roots,
    is_prime,
    rank_mod2,
)
from .errors import PrecisionError


@dataclass(frozen=True)
class TwoAdicModule:
    """omega-action matrix W over Z/2^k for the order attached to p."""

    p: int
    W: ResidueMatrix

    @property
    def k(self) -> int:
        return self.W.k

    @property
    def n(self) -> int:
        return self.W.n

    @property
    def case(self) -> str:
        return "a" if self.p % 8 == 3 else "b"


@dataclass(frozen=True)
class DecompInvariants:
    """Block multiplicities: r companion blocks, then s and (case b) t."""

    case: str
    r: int
    s: int
    t: Optional[int] = None

    def __post_init__(self):
        if self.case not in ("a", "b"):
            raise ValueError("case must be 'a' or 'b'")
        if (self.t is None) != (self.case == "a"):
            raise ValueError("t must be present exactly in case 'b'")
        if self.r < 0 or self.s < 0 or (self.t is not None and self.t < 0):
            raise ValueError("multiplicities must be nonnegative")

    @property
    def n(self) -> int:
        if self.case == "a":
            return 2 * (self.r + self.s)
        return 2 * self.r + self.s + self.t


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _char_poly_vanishes(m: TwoAdicModule) -> bool:
    W = m.W.entries
    k = m.k
    mask = np.uint64((1 << k) - 1)
    R = (kernels.matmul2k(W, W, k) + W * np.uint64(2)) & mask
    idx = np.arange(m.n)
    R[idx, idx] = (R[idx, idx] + np.uint64((1 + m.p) % (1 << k))) & mask
    return not R.any()


def validate(m: TwoAdicModule) -> ValidationResult:
    """Diagnose whether m is a genuine module for its order.

    Checks, in order: p is a prime below 2^63 with p = 3 mod 4, the
    precision is in range, W satisfies W^2 + 2W + (1+p)I = 0 mod 2^k,
    and (case a) the dimension is even.
    """
    p = m.p
    if not isinstance(p, int) or p < 2 or p >= 1 << 63:
        return ValidationResult(False, "p must be a prime below 2^63")
    if not is_prime(p):
        return ValidationResult(False, "p must be prime")
    if p % 4 != 3:
        return ValidationResult(False, "p must be 3 mod 4")
    if m.k < 4:
        return ValidationResult(False, "precision k must be at least 4")
    if not _char_poly_vanishes(m):
        return ValidationResult(False, "W^2 + 2W + (1+p)I != 0 mod 2^k")
    if m.case == "a" and m.n % 2 != 0:
        return ValidationResult(False, "dimension must be even when p = 3 mod 8")
    return ValidationResult(True)


def canonical_module(p: int, k: int, r: int, s: int, t: Optional[int] = None) -> TwoAdicModule:
    """Block-diagonal module with r companion blocks [[0,-(1+p)],[1,-2]],
    then s and (case b) t blocks in the fixed canonical order."""
    p = int(p)
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p % 8 == 3 and t is not None:
        raise ValueError("t is not used when p = 3 mod 8")
    if p % 8 == 7 and t is None:
        raise ValueError("t is required when p = 7 mod 8")
    if p % 4 != 3:
        raise ValueError("p must be 3 mod 4")
    if r < 0 or s < 0 or (t is not None and t < 0):
        raise ValueError("multiplicities must be nonnegative")
    blocks: list[list[list[int]]] = []
    companion = [[0, -(1 + p)], [1, -2]]
    blocks.extend(companion for _ in range(r))
    if t is None:
        pair = [[0, -((p + 1) // 2)], [2, -2]]
        blocks.extend(pair for _ in range(s))
    else:
        roots = hensel_alpha_roots(p, k)
        blocks.extend([[2 * roots.alpha1]] for _ in range(s))
        blocks.extend([[2 * roots.alpha2]] for _ in range(t))
    n = sum(len(b) for b in blocks)
    if n < 1:
        raise ValueError("module must have positive rank")
    rows = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        d = len(b)
        for i in range(d):
            for j in range(d):
                rows[at + i][at + j] = b[i][j]
        at += d
    return TwoAdicModule(p=p, W=ResidueMatrix(rows, k))


def decompose(m: TwoAdicModule) -> DecompInvariants:
    """Recover the block multiplicities of m.

    Case a reads r off the F2-rank of W.  Case b reads the Smith
    valuations of W - 2*alpha1*I, which must all lie in {0, 1, inf};
    any other valuation means the working precision cannot separate
    the blocks and raises PrecisionError.
    """
    v = validate(m)
    if not v:
        raise ValueError(f"invalid module: {v.reason}")
    n, k = m.n, m.k
    if m.case == "a":
        r = rank_mod2(m.W)
        s = n // 2 - r
        if s < 0:
            raise PrecisionError("F2-rank exceeds half the dimension")
        return DecompInvariants(case="a", r=r, s=s)
    roots = hensel_alpha_roots(m.p, k)
    mask = np.uint64((1 << k) - 1)
    shifted = m.W.entries.copy()
    idx = np.arange(n)
    shifted[idx, idx] = (shifted[idx, idx] - np.uint64((2 * roots.alpha1) % (1 << k))) & mask
    vals = kernels.snf_vals2k(shifted, k)
    r = int(np.count_nonzero(vals == 0))
    t = int(np.count_nonzero(vals == 1))
    n_inf = int(np.count_nonzero(vals == k))
    if r + t + n_inf != n:
        raise PrecisionError(
            f"Smith valuations outside {{0, 1, inf}} at precision k={k}"
        )
    s = n_inf - r
    if s < 0 or 2 * r + s + t != n or r != rank_mod2(m.W):
        raise PrecisionError("block counts are inconsistent at this precision")
    return DecompInvariants(case="b", r=r, s=s, t=t)


def random_conjugate(m: TwoAdicModule, seed: int) -> TwoAdicModule:
    """U^{-1} W U for a seed-determined random unimodular U."""
    v = validate(m)
    if not v:
        raise ValueError(f"invalid module: {v.reason}")
    n, k = m.n, m.k
    rng = np.random.default_rng(seed)
    count = 6 * n + 8
    modes = rng.integers(0, 4, size=count)
    rows = rng.integers(0, n, size=count)
    scales = 2 * rng.integers(0, 1 << (k - 1), size=count, dtype=np.int64) + 1
    offsets = rng.integers(0, max(n - 1, 1), size=count)
    shears = rng.integers(0, 1 << k, size=count, dtype=np.int64)
    is_scale = modes == 0
    cols = np.where(is_scale, rows, (rows + 1 + offsets) % n)
    coeffs = np.where(is_scale, scales, shears)
    keep = is_scale | (n > 1)
    arr = np.stack([rows, cols, coeffs], axis=1).astype(np.int64)[keep]
    U = kernels.build_unimodular(n, k, arr)
    ok, Uinv = kernels.inv2k(U, k)
    if not ok:
        raise PrecisionError("conjugating matrix is not unimodular")
    Wp = kernels.matmul2k(kernels.matmul2k(Uinv, m.W.entries, k), U, k)
    return TwoAdicModule(p=m.p, W=ResidueMatrix(Wp, k))


def split(m: TwoAdicModule) -> tuple[ResidueMatrix, DecompInvariants]:
    """Explicit unimodular U with U^{-1} W U equal to the canonical form.

    The result is verified by exact matrix equality before returning;
    a module whose splitting cannot be certified at precision k raises
    PrecisionError.
    """
    inv = decompose(m)
    n, k, p = m.n, m.k, m.p
    if m.case == "a":
        ok, r, s, U = kernels.split_case_a(
            m.W.entries, k, p % (1 << min(k + 1, 62))
        )
        if not ok or (r, s) != (inv.r, inv.s):
            raise PrecisionError("splitting search failed to span the module")
    else:
        roots = hensel_alpha_roots(p, k)
        ok, r, s, t, U = kernels.split_case_b(
            m.W.entries, k, roots.alpha1, roots.alpha2
        )
        if not ok or (r, s, t) != (inv.r, inv.s, inv.t):
            raise PrecisionError("splitting search failed to span the module")
    okU, Uinv = kernels.inv2k(U, k)
    if not okU:
        raise PrecisionError("splitting basis is not unimodular")
    got = kernels.matmul2k(kernels.matmul2k(Uinv, m.W.entries, k), U, k)
    want = canonical_module(p, k, inv.r, inv.s, inv.t).W.entries
    if not np.array_equal(got, want):
        raise PrecisionError("splitting basis does not reach the canonical form")
    return ResidueMatrix(U, k), inv


def is_tate_like(inv: DecompInvariants) -> bool:
    """Whether the invariants can arise from a self-dual lattice context:
    always in case a, and exactly when s == t in case b."""
    return inv.case == "a" or inv.s == inv.t


def module_to_dict(m: TwoAdicModule) -> dict:
    return {
        "p": m.p,
        "k": m.k,
        "n": m.n,
        "entries": [int(x) for row in m.W.entries for x in row],
    }


def load_module(path) -> TwoAdicModule:
    """Read a module from a JSON document {p, k, n, entries(row-major)}.

    Entries may be signed; they are canonicalized mod 2^k on load.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ValueError("module document must be a JSON object")
    for key in ("p", "k", "n", "entries"):
        if key not in doc:
            raise ValueError(f"module document is missing field {key!r}")
    p, k, n, entries = doc["p"], doc["k"], doc["n"], doc["entries"]
    if not isinstance(p, int) or not isinstance(k, int) or not isinstance(n, int):
        raise ValueError("fields p, k, n must be integers")
    if not isinstance(entries, list) or len(entries) != n * n:
        raise ValueError("entries must be a row-major list of length n^2")
    if not all(isinstance(x, int) for x in entries):
        raise ValueError("entries must be integers")
    rows = [entries[i * n:(i + 1) * n] for i in range(n)]
    return TwoAdicModule(p=p, W=ResidueMatrix(rows, k))
