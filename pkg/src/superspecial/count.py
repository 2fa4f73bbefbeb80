"""Counts of superspecial abelian varieties whose Frobenius satisfies
pi^2 = -p, with an independent genus-by-genus reconstruction and the
classical Deuring / Eichler consistency suite for supersingular curves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime, kronecker
from .errors import InvariantViolation
from .qform import class_number

BRANCH_SINGLE = "2or1mod4"   # p = 2 or p = 1 mod 4: one genus only
BRANCH_SEVEN = "7mod8or3"    # p = 7 mod 8 or p = 3: unit index 1
BRANCH_THREE = "3mod8"       # p = 3 mod 8, p != 3: unit index 3


@dataclass(frozen=True)
class CountReport:
    """All quantities entering the closed-form count and the genus sum."""

    p: int
    g: int
    branch: str
    h_field: int
    h_order: int
    unit_index: int
    per_genus: tuple[int, ...]
    total: int

    def __post_init__(self):
        if self.total != sum(self.per_genus):
            raise InvariantViolation(
                f"closed form {self.total} != genus sum {sum(self.per_genus)} "
                f"at p={self.p}, g={self.g}"
            )
        if self.p % 4 == 3 and self.h_order != self.unit_index * self.h_field:
            raise InvariantViolation(
                f"h_order {self.h_order} != unit_index * h_field at p={self.p}"
            )


def field_discriminant(p: int) -> int:
    """Fundamental discriminant of the field generated by a square root
    of -p (of -2p when p = 2)."""
    if p == 2:
        return -8
    if p % 4 == 1:
        return -4 * p
    return -p


def unit_index(p: int) -> int:
    """Index of the units of Z[sqrt(-p)] (joined with the completions)
    inside the maximal-order units: 1, except 3 when p = 3 mod 8, p != 3."""
    if p % 4 != 3:
        raise ValueError("unit index applies to p = 3 mod 4 only")
    return 1 if (p % 8 == 7 or p == 3) else 3


def count_via_genus_sum(p: int, g: int) -> tuple[list[int], int]:
    """Class numbers per genus and their sum, avoiding the closed form.

    For p = 2 or p = 1 mod 4 there is a single genus.  For p = 3 mod 4
    there are g+1 genera; the last one contributes the class number of
    the non-maximal order, computed by raw form enumeration.
    """
    p, g = _check_pg(p, g)
    if p == 2 or p % 4 == 1:
        h = class_number(field_discriminant(p))
        return [h], h
    h = class_number(-p)
    h_last = class_number(-4 * p)
    per = [h] * g + [h_last]
    return per, g * h + h_last


def count_superspecial(p: int, g: int) -> CountReport:
    """Number of superspecial principally polarized dimension-g classes
    with pi^2 = -p, by the closed form, cross-checked against the genus
    sum (construction fails loudly if the two disagree)."""
    p, g = _check_pg(p, g)
    per_genus, _ = count_via_genus_sum(p, g)
    h = class_number(field_discriminant(p))
    if p == 2 or p % 4 == 1:
        branch, u, h_order, total = BRANCH_SINGLE, 1, h, h
    else:
        u = unit_index(p)
        h_order = u * h
        if p % 8 == 7 or p == 3:
            branch, total = BRANCH_SEVEN, (g + 1) * h
        else:
            branch, total = BRANCH_THREE, (g + 3) * h
    return CountReport(
        p=p,
        g=g,
        branch=branch,
        h_field=h,
        h_order=h_order,
        unit_index=u,
        per_genus=tuple(per_genus),
        total=total,
    )


def _check_pg(p: int, g: int) -> tuple[int, int]:
    p, g = int(p), int(g)
    if not is_prime(p):
        raise ValueError("p must be prime")
    if g < 1:
        raise ValueError("g must be >= 1")
    return p, g


def deuring_hprime(p: int) -> int:
    """Number of supersingular j-invariants rational over the prime field."""
    p = _check_p_gt3(p)
    if p % 4 == 1:
        h = class_number(-4 * p)
        if h % 2:
            raise InvariantViolation(f"h(-4p) is odd at p={p}")
        return h // 2
    if p % 8 == 7:
        return class_number(-p)
    return 2 * class_number(-p)


def eichler_h(p: int) -> int:
    """Class number of the quaternion algebra ramified at p and infinity."""
    p = _check_p_gt3(p)
    num = (p - 1) + 3 * (1 - kronecker(-4, p)) + 4 * (1 - kronecker(-3, p))
    if num % 12:
        raise InvariantViolation(f"Eichler mass is not integral at p={p}")
    return num // 12


def type_number_check(p: int) -> int:
    """Type number t recovered from h' = 2t - h; fails if parity breaks."""
    p = _check_p_gt3(p)
    h = eichler_h(p)
    hprime = deuring_hprime(p)
    if (h + hprime) % 2:
        raise InvariantViolation(f"h + h' is odd at p={p}")
    t = (h + hprime) // 2
    if t < 1:
        raise InvariantViolation(f"type number below 1 at p={p}")
    return t


def _check_p_gt3(p: int) -> int:
    p = int(p)
    if p <= 3 or not is_prime(p):
        raise ValueError("p must be a prime greater than 3")
    return p


def sprime_small(p: int) -> int:
    """Number of prime-field isomorphism classes for the two smallest
    characteristics, where the generic genus-1 identification fails."""
    p = int(p)
    if p == 2:
        return 2 * class_number(-4) + class_number(-8)
    if p == 3:
        return 4 * class_number(-3)
    raise ValueError("closed values exist only for p in {2, 3}")
