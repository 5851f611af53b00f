"""Real root isolation in (0, 1] by Sturm sequences and exact bisection."""

import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.rings import PolyElement

from .base import NoRootError, PolyratError, horner, recast, univariate_coefficients, x_ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootInterval:
    """Rational enclosure ``lo < root <= hi`` (or ``lo == hi == root`` when the root was hit exactly)."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi


def sign_variations(sequence: list[list[Fraction]], point: Fraction) -> int:
    signs = []
    for coeffs in sequence:
        value = horner(coeffs, point)
        if value:
            signs.append(value > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(sequence: list[list[Fraction]], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi]."""
    return sign_variations(sequence, lo) - sign_variations(sequence, hi)


def smallest_positive_real_root(p: PolyElement, precision_bits: int, upper: Fraction = Fraction(1)) -> RootInterval:
    if precision_bits < 1:
        raise PolyratError(f"precision must be a positive number of bits, got {precision_bits}")
    p = recast(p, x_ring())
    coeffs = univariate_coefficients(p)
    if coeffs[0] == 0:
        raise PolyratError("polynomial vanishes at 0")
    square_free = p.sqf_part()
    sequence = [univariate_coefficients(s) for s in square_free.sturm()]
    base = sequence[0]

    lo, hi = Fraction(0), Fraction(upper)
    if count_roots(sequence, lo, hi) == 0:
        raise NoRootError(f"no real root in (0, {upper}]")
    eps = Fraction(1, 2**precision_bits)
    while True:
        inside = count_roots(sequence, lo, hi)
        if inside == 1 and horner(base, hi) == 0:
            logger.debug("Root hit exactly at %s", hi)
            return RootInterval(hi, hi)
        if inside == 1 and hi - lo <= eps:
            break
        mid = (lo + hi) / 2
        if count_roots(sequence, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    logger.debug("Root isolated in an interval of width 2^-%d", precision_bits)
    return RootInterval(lo, hi)
