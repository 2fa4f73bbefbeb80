"""Hecke-orbit counts for quasi-isogenies of odd-prime-power degree,
via class groups localized away from the acting prime."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import is_prime
from .errors import InvariantViolation
from .qform import class_number, pic_localized

EXTENSION_NOTE = (
    "per_genus_quotients beyond the pic_R_loc == 1 guarantee are a natural "
    "extrapolation; treat them as conjectural"
)


@dataclass(frozen=True)
class HeckeReport:
    """Localized Picard sizes and the resulting orbit-count guarantee."""

    p: int
    g: int
    ell: int
    pic_O_loc: int
    pic_R_loc: int
    guarantee: bool
    orbit_total_guaranteed: Optional[int]
    per_genus_quotients: tuple[int, ...]
    extension_note: str = EXTENSION_NOTE

    def __post_init__(self):
        if self.guarantee != (self.pic_R_loc == 1):
            raise InvariantViolation("guarantee flag must mirror pic_R_loc == 1")
        if self.guarantee and self.orbit_total_guaranteed != self.g + 1:
            raise InvariantViolation("guaranteed orbit total must be g + 1")
        if (not self.guarantee) and self.orbit_total_guaranteed is not None:
            raise InvariantViolation("orbit total is only set under the guarantee")
        if self.pic_R_loc == 1 and self.pic_O_loc != 1:
            raise InvariantViolation(
                "pic_R_loc == 1 must force pic_O_loc == 1 "
                f"(p={self.p}, ell={self.ell})"
            )


def hecke_orbit_report(p: int, g: int, ell: int) -> HeckeReport:
    """Count ell-adic Hecke orbits among the g+1 genera for p = 3 mod 4.

    When the class group of the non-maximal order localized away from
    ell is trivial, every genus is a single orbit and the total is g+1.
    """
    p, g, ell = int(p), int(g), int(ell)
    if not is_prime(p) or p % 4 != 3:
        raise ValueError("p must be a prime with p = 3 mod 4")
    if g < 1:
        raise ValueError("g must be >= 1")
    if ell == 2 or ell % 2 == 0 or not is_prime(ell):
        raise ValueError("ell must be an odd prime")
    if ell == p:
        raise ValueError("ell must differ from p")
    pic_O = pic_localized(-p, ell)
    pic_R = pic_localized(-4 * p, ell)
    if class_number(-p) % pic_O or class_number(-4 * p) % pic_R:
        raise InvariantViolation("localized Picard size must divide the class number")
    guarantee = pic_R == 1
    return HeckeReport(
        p=p,
        g=g,
        ell=ell,
        pic_O_loc=pic_O,
        pic_R_loc=pic_R,
        guarantee=guarantee,
        orbit_total_guaranteed=(g + 1) if guarantee else None,
        per_genus_quotients=(pic_O,) * g + (pic_R,),
    )
