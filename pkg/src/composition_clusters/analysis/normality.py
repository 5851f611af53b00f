"""Standardized mixed moments of two occurrence counts against bivariate-normal targets."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
from sympy.functions.combinatorial.numbers import stirling

from ..compositions import PatternSet
from .moments import FactorialMoments, MomentFitError, unit
from .moments import moments as moment_report

logger = logging.getLogger(__name__)

DEFAULT_LADDER = (200, 400, 800)


def bivariate_normal_moment(p: int, q: int, rho):
    """E[U^p V^q] for standard normals with correlation ``rho``.

    M(p, q) = (p-1) M(p-2, q) + rho q M(p-1, q-1), M(0, 0) = 1, negative indices give 0;
    M(0, q) is read as M(q, 0).
    """
    if p < 0 or q < 0:
        return 0
    if p == 0 and q == 0:
        return 1
    if p == 0:
        p, q = q, p
    return (p - 1) * bivariate_normal_moment(p - 2, q, rho) + rho * q * bivariate_normal_moment(p - 1, q - 1, rho)


def _pair_alpha(r: int, i: int, j: int, k: int, m: int) -> tuple[int, ...]:
    return unit(r, *([i] * k + [j] * m))


def central_moments(moments: FactorialMoments, i: int, j: int, order: int, n: int) -> dict[tuple[int, int], Fraction]:
    """Exact E[(N_i - mu_i)^p (N_j - mu_j)^q] at size n for every p + q <= order."""
    r = moments.r
    falling = {
        (k, m): moments.exact(_pair_alpha(r, i, j, k, m), n) for k in range(order + 1) for m in range(order + 1 - k)
    }
    raw = {}
    for p in range(order + 1):
        for q in range(order + 1 - p):
            raw[(p, q)] = sum(
                int(stirling(p, k)) * int(stirling(q, m)) * falling[(k, m)] for k in range(p + 1) for m in range(q + 1)
            )
    mu_i, mu_j = raw[(1, 0)], raw[(0, 1)]
    central = {}
    for p in range(order + 1):
        for q in range(order + 1 - p):
            central[(p, q)] = sum(
                comb(p, a) * comb(q, b) * raw[(a, b)] * (-mu_i) ** (p - a) * (-mu_j) ** (q - b)
                for a in range(p + 1)
                for b in range(q + 1)
            )
    return central


@dataclass(frozen=True)
class NormalityRow:
    p: int
    q: int
    target: str
    values: tuple[str, ...]
    gaps: tuple[float, ...]
    converging: bool


@dataclass(frozen=True)
class NormalityReport:
    patterns: str
    pair: tuple[int, int]
    rho: str
    ladder: tuple[int, ...]
    rows: tuple[NormalityRow, ...]

    def row(self, p: int, q: int) -> NormalityRow:
        for row in self.rows:
            if (row.p, row.q) == (p, q):
                return row
        raise KeyError((p, q))

    def to_dict(self) -> dict:
        return {
            "pair": [str(self.pair[0] + 1), str(self.pair[1] + 1)],
            "rho": self.rho,
            "ladder": [str(n) for n in self.ladder],
            "rows": [
                {
                    "p": str(row.p),
                    "q": str(row.q),
                    "target": row.target,
                    "values": list(row.values),
                    "gaps": [f"{gap:.3e}" for gap in row.gaps],
                    "converging": row.converging,
                }
                for row in self.rows
            ],
        }

    def render(self) -> str:
        i, j = self.pair
        header = f"standardized mixed moments of N{i + 1}, N{j + 1} (rho = {self.rho})"
        lines = [header, "p q  target  " + "  ".join(f"n={n}" for n in self.ladder)]
        for row in self.rows:
            values = "  ".join(row.values)
            flag = "" if row.converging else "  (not converging)"
            lines.append(f"{row.p} {row.q}  {row.target}  {values}{flag}")
        return "\n".join(lines)


def normality_check(
    A: PatternSet,
    i: int,
    j: int,
    order: int,
    ladder=None,
    rho=None,
    moments: FactorialMoments | None = None,
    digits: int = 10,
) -> NormalityReport:
    if order < 2:
        raise MomentFitError(f"order must be at least 2, got {order}")
    if not (0 <= i < len(A) and 0 <= j < len(A)) or i == j:
        raise MomentFitError(f"pattern indices {i + 1}, {j + 1} must be distinct members of the set")
    ladder = tuple(sorted(ladder or DEFAULT_LADDER))
    if moments is None or moments.order < order:
        moments = FactorialMoments(A, order)
    if rho is None:
        rho = moment_report(A, 2).correlation[(min(i, j), max(i, j))]

    ctx = mpmath.MPContext()
    ctx.dps = digits + 30
    rho_mp = ctx.mpf(rho.numerator) / rho.denominator if isinstance(rho, Fraction) else ctx.mpf(rho)
    rho_text = str(rho) if isinstance(rho, Fraction) else ctx.nstr(rho_mp, digits)

    # largest rung first so the cached series are computed once
    per_n = {n: central_moments(moments, i, j, order, n) for n in sorted(ladder, reverse=True)}
    rows = []
    for p in range(order + 1):
        for q in range(order + 1 - p):
            if p + q == 0:
                continue
            target = bivariate_normal_moment(p, q, rho_mp)
            values, gaps = [], []
            for n in ladder:
                central = per_n[n]
                sd_i = ctx.sqrt(ctx.mpf(central[(2, 0)].numerator) / central[(2, 0)].denominator)
                sd_j = ctx.sqrt(ctx.mpf(central[(0, 2)].numerator) / central[(0, 2)].denominator)
                value = (ctx.mpf(central[(p, q)].numerator) / central[(p, q)].denominator) / (sd_i**p * sd_j**q)
                values.append(ctx.nstr(value, digits))
                gaps.append(float(abs(value - target)))
            spread = np.diff(np.array(gaps, dtype=float))
            converging = bool(np.all(spread <= 1e-12) or gaps[-1] < gaps[0])
            rows.append(
                NormalityRow(
                    p=p,
                    q=q,
                    target=ctx.nstr(target, digits),
                    values=tuple(values),
                    gaps=tuple(gaps),
                    converging=converging,
                )
            )
    logger.info("Normality table for %s: %d row(s) on n-ladder %s", A, len(rows), ladder)
    return NormalityReport(patterns=str(A), pair=(i, j), rho=rho_text, ladder=ladder, rows=tuple(rows))
