"""Positive-definite binary quadratic forms.

Reduction, class numbers by direct enumeration and by the character-sum
formula, Gauss composition, class-group structure, and class groups
localized away from an odd prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, isqrt

from . import kernels
from .arith import is_prime, kronecker
from .errors import InvariantViolation

_INT64_LIMIT = 1 << 31  # |D| below this routes to the fixed-width kernels


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with a*u + b*v = g = gcd(a, b)."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """x with x = r1 mod m1 and x = r2 mod m2 (moduli need not be coprime)."""
    g, u, _ = _ext_gcd(m1, m2)
    if (r2 - r1) % g:
        raise ArithmeticError("incompatible congruences")
    l = m1 // g * m2
    t = ((r2 - r1) // g * u) % (m2 // g)
    return (r1 + m1 * t) % l


@dataclass(frozen=True, order=True)
class QuadForm:
    """Positive-definite integer form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.disc() >= 0:
            raise ValueError("form must be positive definite")

    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if b < 0 and (abs(b) == a or a == c):
            return False
        return True

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c)

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


def principal_form(D: int) -> QuadForm:
    D = _disc_value(D)
    b0 = D & 1
    return QuadForm(1, b0, (b0 - D) // 4)


def reduce(f: QuadForm) -> QuadForm:
    """The unique reduced representative of f's equivalence class."""
    a, b, c = f.a, f.b, f.c
    while True:
        if not -a < b <= a:
            r = (a - b) // (2 * a)
            c = a * r * r + b * r + c
            b = b + 2 * r * a
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    return QuadForm(a, b, c)


@dataclass(frozen=True)
class Disc:
    """Negative discriminant split as conductor^2 times a fundamental one."""

    value: int
    conductor: int
    fundamental: int

    def __post_init__(self):
        if self.value != self.conductor * self.conductor * self.fundamental:
            raise ValueError("value must equal conductor^2 * fundamental")

    @staticmethod
    def from_value(D) -> "Disc":
        D = _disc_value(D)
        m = -D
        square = 1
        rest = 1  # squarefree part of |D|
        q = 2
        while q * q <= m:
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                square *= q ** (e // 2)
                if e % 2:
                    rest *= q
                if 1 < m < (1 << 63) and is_prime(m):
                    rest *= m
                    m = 1
                    break
            q += 1 if q == 2 else 2
        rest *= m
        s = -rest
        if s % 4 == 1:
            d0, f = s, square
        else:
            if square % 2:
                raise ValueError("discriminant must be 0 or 1 mod 4")
            d0, f = 4 * s, square // 2
        return Disc(value=D, conductor=f, fundamental=d0)


def _disc_value(D) -> int:
    v = D.value if isinstance(D, Disc) else int(D)
    if v >= 0 or v % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and 0 or 1 mod 4")
    return v


def _class_count_py(D: int) -> int:
    absD = -D
    h = 0
    for a in range(1, isqrt(absD // 3) + 1):
        for b in range(absD & 1, a + 1, 2):
            num = b * b + absD
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            h += 1 if (b == 0 or b == a or a == c) else 2
    return h


def class_number(D) -> int:
    """Count of reduced primitive forms of discriminant D, by enumeration."""
    D = _disc_value(D)
    if -D < _INT64_LIMIT:
        return int(kernels.class_count(D))
    return _class_count_py(D)


def class_number_dirichlet(D) -> int:
    """Class number via the character sum; conductor must be 1 or 2."""
    disc = Disc.from_value(D)
    if disc.conductor == 1:
        return _dirichlet_fundamental(disc.value)
    if disc.conductor != 2:
        raise ValueError("character-sum path supports conductor 1 or 2 only")
    h0 = _dirichlet_fundamental(disc.fundamental)
    num = h0 * (2 - kronecker(disc.fundamental, 2))
    u = 3 if disc.fundamental == -3 else 2 if disc.fundamental == -4 else 1
    if num % u:
        raise InvariantViolation("unit-index division is not exact")
    return num // u


def _dirichlet_fundamental(D: int) -> int:
    w = 6 if D == -3 else 4 if D == -4 else 2
    if -D < _INT64_LIMIT:
        total = int(kernels.dirichlet_sum(D))
    else:
        total = sum(kronecker(D, a) * a for a in range(1, -D))
    num = w * abs(total)
    den = 2 * (-D)
    if num % den:
        raise InvariantViolation("character sum is not divisible as required")
    return num // den


def _transformed(f: QuadForm, x: int, z: int, y: int, w: int) -> QuadForm:
    """Action of the determinant-1 substitution (X, Y) -> (xX+zY, yX+wY)."""
    a = f.value(x, y)
    b = 2 * f.a * x * z + f.b * (x * w + z * y) + 2 * f.c * y * w
    c = f.value(z, w)
    return QuadForm(a, b, c)


def _coprime_representative(g: QuadForm, n: int) -> QuadForm:
    """A form equivalent to g whose leading coefficient is coprime to n."""
    if gcd(g.a, n) == 1:
        return g
    for radius in range(1, 2 * n + 3):
        for x in range(-radius, radius + 1):
            for y in range(-radius, radius + 1):
                if max(abs(x), abs(y)) != radius or gcd(x, y) != 1:
                    continue
                if gcd(g.value(x, y), n) != 1:
                    continue
                _, u, v = _ext_gcd(x, y)
                # x*u + y*v = 1, so [[x, -v], [y, u]] has determinant 1
                return _transformed(g, x, -v, y, u)
    raise InvariantViolation("primitive form represents no value coprime to n")


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition of primitive classes; returns the reduced product."""
    D = f.disc()
    if g.disc() != D:
        raise ValueError("forms must share a discriminant")
    if not (f.is_primitive() and g.is_primitive()):
        raise ValueError("forms must be primitive")
    f = reduce(f)
    g2 = _coprime_representative(reduce(g), f.a)
    # translate both to a common middle coefficient: concordant pair
    B = _crt(f.b, 2 * f.a, g2.b, 2 * g2.a)
    A = f.a * g2.a
    if (B * B - D) % (4 * A):
        raise InvariantViolation("concordant middle coefficient failed")
    return reduce(QuadForm(A, B, (B * B - D) // (4 * A)))


def qf_pow(f: QuadForm, e: int) -> QuadForm:
    """e-fold composition power of f, e >= 0."""
    result = principal_form(f.disc())
    base = reduce(f)
    while e > 0:
        if e & 1:
            result = compose(result, base)
        e >>= 1
        if e:
            base = compose(base, base)
    return result


def reduced_forms(D) -> tuple[QuadForm, ...]:
    """All reduced primitive forms of discriminant D, sorted."""
    D = _disc_value(D)
    absD = -D
    out = []
    for a in range(1, isqrt(absD // 3) + 1):
        for b in range(absD & 1, a + 1, 2):
            num = b * b + absD
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or gcd(gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
            if 0 < b < a < c:
                out.append(QuadForm(a, -b, c))
    return tuple(sorted(out))


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def element_order(f: QuadForm, group_size: int) -> int:
    """Order of f's class given a multiple of it (the group size)."""
    identity = principal_form(f.disc())
    for d in _divisors(group_size):
        if qf_pow(f, d) == identity:
            return d
    raise InvariantViolation("element order does not divide the group size")


@dataclass(frozen=True)
class FormClassGroup:
    """All reduced primitive forms of one discriminant, with their orders."""

    D: int
    elements: tuple[QuadForm, ...]
    orders: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> QuadForm:
        return self.elements[0]

    @cached_property
    def _index(self) -> dict[QuadForm, int]:
        return {f: i for i, f in enumerate(self.elements)}

    def compose(self, i: int, j: int) -> int:
        return self._index[compose(self.elements[i], self.elements[j])]

    def table(self) -> list[list[int]]:
        """Full composition table as element indices; sizes above 2000
        fall back to order data only and are rejected here."""
        if self.h > 2000:
            raise ValueError("composition table limited to groups of size <= 2000")
        return [[self.compose(i, j) for j in range(self.h)] for i in range(self.h)]


def class_group(D) -> FormClassGroup:
    D = _disc_value(D)
    elements = reduced_forms(D)
    h = class_number(D)
    if len(elements) != h:
        raise InvariantViolation("reduced-form enumeration disagrees with the count")
    if elements[0] != principal_form(D):
        raise InvariantViolation("principal form is not the first element")
    orders = tuple(element_order(f, h) for f in elements)
    return FormClassGroup(D=D, elements=elements, orders=orders)


@lru_cache(maxsize=None)
def _cached_group_order(D: int, a: int, b: int, c: int) -> int:
    return element_order(QuadForm(a, b, c), class_number(D))


def pic_localized(D, ell: int) -> int:
    """Size of the class group of D modulo the classes of forms whose
    leading coefficient is ell (the group localized away from ell)."""
    D = _disc_value(D)
    ell = int(ell)
    if ell == 2 or ell % 2 == 0 or not is_prime(ell):
        raise ValueError("ell must be an odd prime")
    if Disc.from_value(D).conductor % ell == 0:
        raise ValueError("ell must not divide the conductor")
    h = class_number(D)
    if kronecker(D, ell) == -1:
        return h
    for b in range(2 * ell):
        if (b * b - D) % (4 * ell) == 0:
            cand = QuadForm(ell, b, (b * b - D) // (4 * ell))
            if cand.is_primitive():
                order = _cached_group_order(D, cand.a, cand.b, cand.c)
                return h // order
    raise InvariantViolation("no form with leading coefficient ell found")
