"""
Occurrence statistics from the marker generating function F_S(x; X_1..X_r).

Factorial moments of the occurrence counts at size n are coefficients of the Taylor
expansion of F_S at X = 1, divided by the number of compositions of n (2^(n-1)). Their
generating functions only have poles at x = 1/2 and x = 1, so each factorial moment is a
polynomial in n plus a polynomial times 2^(1-n). The polynomial part is read off the pole
at 1/2; the exact per-n values are then checked against both poles on a verification
window.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from sympy.polys.rings import PolyElement

from ..cluster import joint_gf
from ..compositions import PatternSet
from ..polyrat import (
    RationalFunction,
    dominant_pole_part,
    factorial_weight,
    marker_expansion,
    polynomial_ring,
    polynomial_value,
    series_coefficients,
)
from ..polyrat.base import render_polynomial, to_fraction, to_qq

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_LENGTH = 17
MIN_WINDOW_POINTS = 10


class MomentFitError(RuntimeError):
    def __init__(self, message):
        super().__init__(message)
        self.message = message


@dataclass(frozen=True)
class LinearForm:
    """slope * n + intercept with exact rational coefficients."""

    slope: Fraction
    intercept: Fraction

    @classmethod
    def from_polynomial(cls, p: PolyElement, what: str) -> "LinearForm":
        degree = p.degree() if p else 0
        if degree > 1:
            raise MomentFitError(f"{what} is not linear in n (degree {degree}); try a larger window")
        coeffs = {exp: to_fraction(coeff) for (exp,), coeff in p.iterterms()}
        return cls(coeffs.get(1, Fraction(0)), coeffs.get(0, Fraction(0)))

    def __call__(self, n) -> Fraction:
        return self.slope * n + self.intercept

    def __str__(self) -> str:
        if not self.slope:
            return str(self.intercept)
        head = "n" if self.slope == 1 else f"{self.slope}*n"
        if not self.intercept:
            return head
        sign = "-" if self.intercept < 0 else "+"
        return f"{head} {sign} {abs(self.intercept)}"

    def to_dict(self) -> dict:
        return {"slope": str(self.slope), "intercept": str(self.intercept)}


@dataclass(frozen=True)
class MomentReport:
    patterns: str
    expectation: tuple[LinearForm, ...]
    variance: tuple[LinearForm, ...]
    covariance: dict[tuple[int, int], LinearForm]
    correlation: dict[tuple[int, int], Fraction | str]
    second_moments: dict[tuple[int, int], PolyElement]
    factorial_gfs: dict[tuple[int, ...], RationalFunction]
    window: range
    normality_table: object = field(default=None, compare=False)

    def to_dict(self) -> dict:
        payload = {
            "patterns": self.patterns,
            "expectation": [form.to_dict() for form in self.expectation],
            "variance": [form.to_dict() for form in self.variance],
            "covariance": {f"{i + 1},{j + 1}": form.to_dict() for (i, j), form in self.covariance.items()},
            "correlation": {f"{i + 1},{j + 1}": str(value) for (i, j), value in self.correlation.items()},
            "second_moments": {
                f"{i + 1},{j + 1}": render_polynomial(p) for (i, j), p in self.second_moments.items()
            },
            "window": {"start": str(self.window.start), "stop": str(self.window.stop - 1)},
        }
        if self.normality_table is not None:
            payload["normality"] = self.normality_table.to_dict()
        return payload

    def render(self) -> str:
        lines = []
        for i, form in enumerate(self.expectation):
            lines.append(f"E[N{i + 1}] = {form}")
        for i, form in enumerate(self.variance):
            lines.append(f"Var[N{i + 1}] = {form}")
        for (i, j), form in self.covariance.items():
            lines.append(f"Cov[N{i + 1},N{j + 1}] = {form}")
        for (i, j), value in self.correlation.items():
            lines.append(f"corr[N{i + 1},N{j + 1}] -> {value}")
        lines.append(f"verified on n = {self.window.start}..{self.window.stop - 1}")
        if self.normality_table is not None:
            lines.append("")
            lines.append(self.normality_table.render())
        return "\n".join(lines)


def unit(r: int, *positions: int) -> tuple[int, ...]:
    alpha = [0] * r
    for i in positions:
        alpha[i] += 1
    return tuple(alpha)


def _excess(f: RationalFunction) -> int:
    """deg num - deg den; coefficients are pure pole contributions beyond it."""
    return (f.num.degree() if f.num else 0) - f.den.degree()


def _check_decomposition(
    alpha: tuple[int, ...], f: RationalFunction, half: PolyElement, one: PolyElement, window: range
) -> None:
    coefficients = series_coefficients(f, window.stop - 1)
    for n in window:
        expected = polynomial_value(half, n) * 2**n + polynomial_value(one, n)
        if coefficients[n] != expected:
            raise MomentFitError(
                f"factorial moment {alpha} is not eventually exact at n={n}; try a larger window start"
            )


class FactorialMoments:
    """Polynomial parts of the factorial moments E[prod (N_i)_(alpha_i)] at size n."""

    def __init__(self, A: PatternSet, order: int, window: range | None = None, joint: RationalFunction | None = None):
        self.pattern_set = A
        self.order = order
        self.joint = joint if joint is not None else joint_gf(A)
        self.expansion = marker_expansion(self.joint, order)
        self.r = len(A)
        default_start = max(4 * A.common_length, 1)
        self._parts: dict[tuple[int, ...], tuple[PolyElement, PolyElement]] = {}
        self.factorial_gfs: dict[tuple[int, ...], RationalFunction] = {}
        for alpha, c in self.expansion.items():
            if not any(alpha):
                continue
            self.factorial_gfs[alpha] = c * factorial_weight(alpha)
            default_start = max(default_start, _excess(c) + 1)
        self.window = window if window is not None else range(default_start, default_start + DEFAULT_WINDOW_LENGTH)
        if len(self.window) < MIN_WINDOW_POINTS:
            raise MomentFitError(f"verification window needs at least {MIN_WINDOW_POINTS} points")
        for alpha, c in self.expansion.items():
            if not any(alpha):
                continue
            half = dominant_pole_part(c, Fraction(1, 2))
            one = dominant_pole_part(c, Fraction(1))
            _check_decomposition(alpha, c, half, one, self.window)
            self._parts[alpha] = (half, one)
        self._series: dict[tuple[int, ...], list[Fraction]] = {}
        logger.info(
            "Factorial moments to order %d verified on n=%d..%d", order, self.window.start, self.window.stop - 1
        )

    def polynomial(self, alpha: tuple[int, ...]) -> PolyElement:
        """alpha! * 2 * p_alpha(n): the polynomial part of the factorial moment."""
        ring = polynomial_ring(("n",))
        if alpha not in self._parts:
            return ring.zero
        return self._parts[alpha][0].mul_ground(to_qq(2 * factorial_weight(alpha)))

    def exact(self, alpha: tuple[int, ...], n: int) -> Fraction:
        """The exact factorial moment at size n >= 1."""
        if not any(alpha):
            return Fraction(1)
        c = self.expansion.get(alpha)
        if c is None:
            return Fraction(0)
        cached = self._series.get(alpha)
        if cached is None or len(cached) <= n:
            cached = list(series_coefficients(c, n))
            self._series[alpha] = cached
        coefficient = cached[n]
        return coefficient * factorial_weight(alpha) / Fraction(2) ** (n - 1)


def _sqrt_ratio(numerator: Fraction, product: Fraction, digits: int = 20) -> Fraction | str:
    """numerator / sqrt(product), exact when product is a rational square."""
    root_num, root_den = math.isqrt(product.numerator), math.isqrt(product.denominator)
    if root_num**2 == product.numerator and root_den**2 == product.denominator:
        return numerator / Fraction(root_num, root_den)
    ctx = mpmath.MPContext()
    ctx.dps = digits + 10
    value = (ctx.mpf(numerator.numerator) / numerator.denominator) / ctx.sqrt(
        ctx.mpf(product.numerator) / product.denominator
    )
    return ctx.nstr(value, digits)


def moments(A: PatternSet, order: int = 2, window: range | None = None, ladder=None) -> MomentReport:
    """Expectation, variance, covariance and correlation of the occurrence counts.

    With ``order > 2`` and at least two patterns, the report also carries the
    standardized mixed-moment table for the first two patterns.
    """
    if not len(A):
        raise MomentFitError("moments need at least one pattern")
    if order < 2:
        raise MomentFitError(f"order must be at least 2, got {order}")
    factorial = FactorialMoments(A, order, window)
    r = len(A)
    expectation_polys = [factorial.polynomial(unit(r, i)) for i in range(r)]
    expectation = tuple(LinearForm.from_polynomial(p, f"E[N{i + 1}]") for i, p in enumerate(expectation_polys))
    variance = []
    for i in range(r):
        second = factorial.polynomial(unit(r, i, i))
        p = second + expectation_polys[i] - expectation_polys[i] ** 2
        variance.append(LinearForm.from_polynomial(p, f"Var[N{i + 1}]"))
    for i, form in enumerate(variance):
        if form.slope <= 0:
            raise MomentFitError(f"variance slope of N{i + 1} is not positive ({form.slope})")
    covariance, correlation, second_moments = {}, {}, {}
    for i in range(r):
        for j in range(i + 1, r):
            mixed = factorial.polynomial(unit(r, i, j))
            second_moments[(i, j)] = mixed
            residual = mixed - expectation_polys[i] * expectation_polys[j]
            form = LinearForm.from_polynomial(residual, f"Cov[N{i + 1},N{j + 1}]")
            covariance[(i, j)] = form
            correlation[(i, j)] = _sqrt_ratio(form.slope, variance[i].slope * variance[j].slope)

    table = None
    if order > 2 and r >= 2:
        from .normality import normality_check

        table = normality_check(A, 0, 1, order, ladder=ladder, rho=correlation[(0, 1)], moments=factorial)
    return MomentReport(
        patterns=str(A),
        expectation=expectation,
        variance=tuple(variance),
        covariance=covariance,
        correlation=correlation,
        second_moments=second_moments,
        factorial_gfs=factorial.factorial_gfs,
        window=factorial.window,
        normality_table=table,
    )
