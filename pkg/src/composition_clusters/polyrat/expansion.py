"""
Expansions used by the moment machinery.

``marker_expansion`` gives the Taylor coefficients of a marker generating function around
X = (1, ..., 1): mixed partial derivatives at X = 1 are ``alpha! * c_alpha``.
``dominant_pole_part`` turns the principal part of a univariate fraction at a real pole
into the exact polynomial that multiplies ``x0**(-n)`` in its n-th coefficient.
"""

import itertools
import logging
import math
from fractions import Fraction

from sympy.polys.rings import PolyElement

from .base import PolyratError, RationalFunction, polynomial_ring, ring_names, to_qq, univariate_coefficients, x_ring
from .series import recurrence_coefficients

logger = logging.getLogger(__name__)


def _split_by_markers(p: PolyElement, indices: list[int], order: int) -> dict[tuple[int, ...], PolyElement]:
    """Group the terms of ``p`` by marker exponent, keeping total marker degree <= order."""
    names = ring_names(p.ring)
    x_index = names.index("x") if "x" in names else None
    grouped: dict[tuple[int, ...], dict[tuple[int], object]] = {}
    for monom, coeff in p.iterterms():
        alpha = tuple(monom[i] for i in indices)
        if sum(alpha) > order:
            continue
        grouped.setdefault(alpha, {})[(monom[x_index] if x_index is not None else 0,)] = coeff
    return {alpha: x_ring().from_dict(terms) for alpha, terms in grouped.items()}


def marker_expansion(
    f: RationalFunction, order: int, markers: tuple[str, ...] | None = None
) -> dict[tuple[int, ...], RationalFunction]:
    """Coefficients c_alpha(x) of f(x; 1 + u) up to total u-degree ``order``.

    With num and den split by u-degree, ``den_0 * c_alpha = num_alpha - sum den_gamma *
    c_(alpha - gamma)`` over 0 < gamma <= alpha, so every step is univariate. Only nonzero
    coefficients are returned; each is a GCD-reduced function of x.
    """
    if order < 0:
        raise PolyratError(f"expansion order must be nonnegative, got {order}")
    ring = f.ring
    names = f.variables
    markers = tuple(markers) if markers is not None else tuple(name for name in names if name != "x")
    extra = f.free_variables - {"x", *markers}
    if extra:
        raise PolyratError(f"unexpected variables {sorted(extra)} in a marker generating function")
    indices = [names.index(name) for name in markers if name in names]
    shift = [(ring.gens[i], ring.gens[i] + 1) for i in indices]
    num = _split_by_markers(f.num.compose(shift) if shift else f.num, indices, order)
    den = _split_by_markers(f.den.compose(shift) if shift else f.den, indices, order)

    zero = (0,) * len(indices)
    if zero not in den:
        raise PolyratError("denominator vanishes identically at X = 1")
    base = RationalFunction.from_polynomial(den[zero])
    den_terms = [(gamma, RationalFunction.from_polynomial(q)) for gamma, q in den.items() if gamma != zero]
    alphas = sorted(
        (alpha for alpha in itertools.product(range(order + 1), repeat=len(indices)) if sum(alpha) <= order),
        key=lambda alpha: (sum(alpha), alpha),
    )
    out: dict[tuple[int, ...], RationalFunction] = {}
    for alpha in alphas:
        acc = RationalFunction.from_polynomial(num.get(alpha, x_ring().zero))
        for gamma, q in den_terms:
            beta = tuple(a - g for a, g in zip(alpha, gamma))
            if min(beta) < 0 or beta not in out:
                continue
            acc = acc - q * out[beta]
        value = acc / base
        if not value.is_zero:
            out[alpha] = value
    logger.debug("Marker expansion to order %d: %d coefficient(s)", order, len(out))
    return out


def factorial_weight(alpha: tuple[int, ...]) -> int:
    """alpha! = prod(alpha_i!), the factor between c_alpha and the mixed derivative."""
    return math.prod(math.factorial(a) for a in alpha)


def _rising_binomial(ring, m: int) -> PolyElement:
    """binom(n + m - 1, m - 1) as a polynomial in n."""
    n = ring.gens[0]
    result = ring.one
    for j in range(1, m):
        result *= n + j
    return result.quo_ground(to_qq(math.factorial(m - 1))) if m > 1 else result


def dominant_pole_part(f: RationalFunction, x0: Fraction) -> PolyElement:
    """The polynomial p(n) in QQ[n] with [x^n] f = p(n) * x0^(-n) + (other poles).

    Zero when x0 is not a pole of f.
    """
    x0 = Fraction(x0)
    if x0 == 0:
        raise PolyratError("pole at the origin has no coefficient asymptotics")
    f = f.univariate("x")
    ring = x_ring()
    x = ring.gens[0]
    linear = ring.one - x.quo_ground(to_qq(x0))
    cofactor = f.den
    multiplicity = 0
    while True:
        quotient, remainder = cofactor.div(linear)
        if remainder:
            break
        cofactor = quotient
        multiplicity += 1
    n_ring = polynomial_ring(("n",))
    if multiplicity == 0:
        return n_ring.zero

    # x = x0 (1 - w) turns (1 - x/x0) into w; expand the regular part in w
    point = ring.ground_new(to_qq(x0)) - x.mul_ground(to_qq(x0))
    shifted_num = univariate_coefficients(f.num.compose(x, point))
    shifted_den = univariate_coefficients(cofactor.compose(x, point))
    local = recurrence_coefficients(shifted_num, shifted_den, multiplicity - 1)

    result = n_ring.zero
    for i, c in enumerate(local):
        if c:
            result += _rising_binomial(n_ring, multiplicity - i).mul_ground(to_qq(c))
    logger.debug("Pole at %s of multiplicity %d", x0, multiplicity)
    return result


def polynomial_value(p: PolyElement, n: int | Fraction) -> Fraction:
    """Evaluate a polynomial of QQ[n] exactly."""
    total = Fraction(0)
    for (exp,), coeff in p.iterterms():
        total += Fraction(int(coeff.numerator), int(coeff.denominator)) * Fraction(n) ** exp
    return total
