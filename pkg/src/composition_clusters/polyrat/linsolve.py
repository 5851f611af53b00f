"""Fraction-free (Bareiss) elimination over a polynomial ring."""

import logging
from collections.abc import Sequence

from sympy.polys.rings import PolyElement

from .base import (
    PolyratError,
    RationalFunction,
    SingularSystemError,
    polynomial_ring,
    recast,
    ring_names,
    sort_variables,
)

logger = logging.getLogger(__name__)


def _common_ring(matrix: Sequence[Sequence[PolyElement]], rhs: Sequence[PolyElement]):
    names = set()
    for row in matrix:
        for entry in row:
            names.update(ring_names(entry.ring))
    for entry in rhs:
        names.update(ring_names(entry.ring))
    return polynomial_ring(sort_variables(names))


def bareiss_solve(
    matrix: Sequence[Sequence[PolyElement]], rhs: Sequence[PolyElement]
) -> tuple[list[PolyElement], PolyElement]:
    """Solve ``matrix @ sol = rhs`` and return ``(y, D)`` with ``sol[i] = y[i] / D``.

    Pivots are chosen per column as the nonzero candidate with the fewest terms. ``D`` is the
    last pivot, i.e. the determinant up to sign. The result is checked exactly against the
    original system before it is returned.
    """
    n = len(matrix)
    if len(rhs) != n or any(len(row) != n for row in matrix):
        raise PolyratError(f"expected a square {n}x{n} system with {n} right-hand sides")
    if n == 0:
        raise PolyratError("empty linear system")
    ring = _common_ring(matrix, rhs)
    original = [[recast(entry, ring) for entry in row] for row in matrix]
    target = [recast(entry, ring) for entry in rhs]
    aug = [list(row) + [b] for row, b in zip(original, target)]

    previous = ring.one
    for k in range(n):
        candidates = [i for i in range(k, n) if aug[i][k]]
        if not candidates:
            raise SingularSystemError(k)
        p = min(candidates, key=lambda i: (len(aug[i][k]), i))
        if p != k:
            aug[k], aug[p] = aug[p], aug[k]
        pivot = aug[k][k]
        logger.debug("Pivot %d: %d term(s)", k, len(pivot))
        for i in range(k + 1, n):
            factor = aug[i][k]
            for j in range(k + 1, n + 1):
                value = pivot * aug[i][j]
                if factor:
                    value -= factor * aug[k][j]
                aug[i][j] = value if previous == ring.one else value.exquo(previous)
            aug[i][k] = ring.zero
        previous = pivot

    det = aug[n - 1][n - 1]
    y: list[PolyElement] = [ring.zero] * n
    for i in range(n - 1, -1, -1):
        acc = det * aug[i][n]
        for j in range(i + 1, n):
            if aug[i][j] and y[j]:
                acc -= aug[i][j] * y[j]
        y[i] = acc.exquo(aug[i][i])

    for i, row in enumerate(original):
        lhs = ring.zero
        for entry, value in zip(row, y):
            if entry and value:
                lhs += entry * value
        if lhs != det * target[i]:
            raise PolyratError(f"back-substitution check failed in row {i}")
    return y, det


def solve_linear_system(
    matrix: Sequence[Sequence[PolyElement]], rhs: Sequence[PolyElement]
) -> list[RationalFunction]:
    y, det = bareiss_solve(matrix, rhs)
    return [RationalFunction.new(value, det) for value in y]
