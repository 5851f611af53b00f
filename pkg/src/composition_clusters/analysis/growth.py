"""
Series and coefficient asymptotics of avoider generating functions.

For F = P/Q reduced, the smallest positive root x0 of Q is taken as the dominant
singularity (Pringsheim), so a(n) ~ C * lambda^n with lambda = 1/x0 and
C = -P(x0) / (x0 * Q'(x0)). Dominance is then checked against the exact series.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..cluster import avoider_gf
from ..compositions import PatternSet
from ..polyrat import (
    NoRootError,
    RationalFunction,
    RootInterval,
    SeriesPrefix,
    series_coefficients,
    smallest_positive_real_root,
    univariate_coefficients,
)
from ..polyrat.base import horner
from ..polyrat.series import recurrence_coefficients

logger = logging.getLogger(__name__)

CHECK_INDEX = 2000
CHECK_TOLERANCE = 1e-6
GUARD_DIGITS = 20


class GrowthError(RuntimeError):
    def __init__(self, message):
        super().__init__(message)
        self.message = message


@dataclass(frozen=True)
class GrowthEstimate:
    """Decimal values are strings with ``digits`` significant digits."""

    rate: str
    amplitude: str | None
    x0: RootInterval
    digits: int
    dominant: bool | None = None
    subexponential: bool = False
    check_index: int | None = None
    check_deviation: str | None = None
    ratio_at_check: str | None = None

    def to_dict(self) -> dict:
        return {
            "lambda": self.rate,
            "amplitude": self.amplitude,
            "x0": {"lo": str(self.x0.lo), "hi": str(self.x0.hi)},
            "digits": str(self.digits),
            "dominant": self.dominant,
            "subexponential": self.subexponential,
            "check_index": None if self.check_index is None else str(self.check_index),
            "check_deviation": self.check_deviation,
            "ratio_at_check": self.ratio_at_check,
        }


def series(A: PatternSet, N: int) -> SeriesPrefix:
    """a(0..N), the number of compositions of n avoiding every pattern of A."""
    return series_coefficients(avoider_gf(A).F, N)


def _mp(ctx, value: Fraction):
    return ctx.mpf(value.numerator) / value.denominator


def _derivative(coeffs: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(coeffs)][1:] or [Fraction(0)]


def growth_of(F: RationalFunction, digits: int = 12, check_index: int = CHECK_INDEX) -> GrowthEstimate:
    if digits < 1:
        raise GrowthError(f"digits must be positive, got {digits}")
    F = F.univariate("x")
    P = univariate_coefficients(F.num)
    Q = univariate_coefficients(F.den)
    bits = math.ceil((digits + GUARD_DIGITS) * math.log2(10))
    try:
        interval = smallest_positive_real_root(F.den, bits)
    except NoRootError as exc:
        raise GrowthError(f"no dominant singularity in (0, 1]: {exc.message}") from exc

    if interval.is_exact and interval.hi == 1:
        logger.info("Denominator vanishes at x = 1: subexponential growth")
        return GrowthEstimate(rate="1", amplitude=None, x0=interval, digits=digits, subexponential=True)

    ctx = mpmath.MPContext()
    ctx.dps = digits + GUARD_DIGITS
    x0 = _mp(ctx, interval.hi) if interval.is_exact else _mp(ctx, interval.midpoint)
    rate = 1 / x0

    dQ = _derivative(Q)
    lo_sign, hi_sign = horner(dQ, interval.lo), horner(dQ, interval.hi)
    if lo_sign == 0 or hi_sign == 0 or (lo_sign > 0) != (hi_sign > 0):
        logger.warning("Dominant pole is not simple; amplitude omitted")
        return GrowthEstimate(
            rate=ctx.nstr(rate, digits), amplitude=None, x0=interval, digits=digits, dominant=False
        )

    p_value = sum(_mp(ctx, c) * x0**i for i, c in enumerate(P))
    dq_value = sum(_mp(ctx, c) * x0**i for i, c in enumerate(dQ))
    amplitude = -p_value / (x0 * dq_value)

    coefficients = recurrence_coefficients(P, Q, check_index + 1)
    a_n, a_next = coefficients[check_index], coefficients[check_index + 1]
    if a_n == 0:
        dominant, deviation, ratio = False, None, None
        logger.warning("Series coefficient at n=%d vanishes; cannot confirm dominance", check_index)
    else:
        scaled = _mp(ctx, a_n) / (amplitude * rate**check_index)
        deviation_value = abs(scaled - 1)
        dominant = bool(deviation_value <= CHECK_TOLERANCE)
        deviation = ctx.nstr(deviation_value, 5)
        ratio = ctx.nstr(_mp(ctx, a_next) / _mp(ctx, a_n), digits)
        if not dominant:
            logger.warning(
                "a(%d)/(C*lambda^%d) deviates from 1 by %s: lambda may not be dominant",
                check_index,
                check_index,
                deviation,
            )
    return GrowthEstimate(
        rate=ctx.nstr(rate, digits),
        amplitude=ctx.nstr(amplitude, digits),
        x0=interval,
        digits=digits,
        dominant=dominant,
        check_index=check_index,
        check_deviation=deviation,
        ratio_at_check=ratio,
    )


def growth(A: PatternSet, digits: int = 12, check_index: int = CHECK_INDEX) -> GrowthEstimate:
    return growth_of(avoider_gf(A).F, digits, check_index)
