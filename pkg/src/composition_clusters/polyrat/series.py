import logging
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from .base import PoleAtOriginError, PolyratError, RationalFunction, univariate_coefficients

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesPrefix:
    """Maclaurin coefficients a(0..N); index = power of x."""

    coefficients: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coefficients)

    def __getitem__(self, index):
        return self.coefficients[index]

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def as_integers(self) -> list[int]:
        if not self.is_integral:
            raise PolyratError("series has non-integer coefficients")
        return [int(c) for c in self.coefficients]


def recurrence_coefficients(p: list[Fraction], q: list[Fraction], N: int) -> list[Fraction]:
    """First N+1 coefficients of p(x)/q(x) from q0*a(n) = p(n) - sum_{i>=1} q_i*a(n-i)."""
    if not q or q[0] == 0:
        raise PoleAtOriginError("denominator vanishes at x = 0; the series has a pole at the origin")
    q0 = q[0]
    integral = all(c.denominator == 1 for c in p) and all(c.denominator == 1 for c in q) and abs(q0) == 1
    if integral:
        # stays in int arithmetic; q0 is a unit
        pi = [int(c) for c in p]
        qi = [int(c) for c in q]
        sign = int(q0)
        out: list[int] = []
        for n in range(N + 1):
            acc = pi[n] if n < len(pi) else 0
            for i in range(1, min(n, len(qi) - 1) + 1):
                acc -= qi[i] * out[n - i]
            out.append(acc * sign)
        return [Fraction(value) for value in out]
    coeffs: list[Fraction] = []
    for n in range(N + 1):
        acc = p[n] if n < len(p) else Fraction(0)
        for i in range(1, min(n, len(q) - 1) + 1):
            acc -= q[i] * coeffs[n - i]
        coeffs.append(acc / q0)
    return coeffs


def series_coefficients(f: RationalFunction, N: int) -> SeriesPrefix:
    if N < 0:
        raise PolyratError(f"series length must be nonnegative, got {N}")
    f = f.univariate("x")
    p = univariate_coefficients(f.num)
    q = univariate_coefficients(f.den)
    return SeriesPrefix(tuple(recurrence_coefficients(p, q, N)))
