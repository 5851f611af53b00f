"""
Exact rational functions over sparse polynomial rings QQ[x, t, X1, ..., Xr].

Polynomials are sympy ``PolyElement`` values living in lex-ordered rings built by
``polynomial_ring``. ``RationalFunction`` wraps a numerator/denominator pair and keeps it
normalized:

- univariate fractions are reduced by their polynomial GCD,
- multivariate fractions only lose common monomial factors (no multivariate GCD),
- integer content is removed jointly and the denominator's leading coefficient is positive.

Equality is decided by cross-multiplication, so two differently normalized multivariate
fractions compare equal whenever they denote the same function.
"""

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy import Symbol, SympifyError, sympify
from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

logger = logging.getLogger(__name__)


class PolyratError(ArithmeticError):
    """Raised by the exact arithmetic kernel."""

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class ZeroDivisionRationalError(PolyratError, ZeroDivisionError):
    pass


class SingularSystemError(PolyratError):
    def __init__(self, column: int):
        super().__init__(f"singular system: no nonzero pivot in column {column}")
        self.column = column


class PoleAtOriginError(PolyratError):
    pass


class NoRootError(PolyratError):
    pass


def _variable_key(name: str) -> tuple[int, int]:
    # x, then t, then the markers X1..Xr in numeric order, then anything else by name
    if name == "x":
        return (0, 0)
    if name == "t":
        return (1, 0)
    if name.startswith("X") and name[1:].isdigit():
        return (2, int(name[1:]))
    return (3, 0)


def sort_variables(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=lambda name: (_variable_key(name), name)))


@functools.lru_cache(maxsize=None)
def polynomial_ring(names: tuple[str, ...]) -> PolyRing:
    """The lex-ordered ring QQ[names]; identical names give the identical ring."""
    return PolyRing(names, QQ, lex)


def marker_names(count: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(1, count + 1))


def ring_names(ring: PolyRing) -> tuple[str, ...]:
    return tuple(str(symbol) for symbol in ring.symbols)


def generator(ring: PolyRing, name: str) -> PolyElement:
    """The generator of ``ring`` called ``name``."""
    names = ring_names(ring)
    if name not in names:
        raise PolyratError(f"variable {name} does not exist in the ring {names}")
    return ring.gens[names.index(name)]


def used_names(p: PolyElement) -> set[str]:
    names = ring_names(p.ring)
    used = set()
    for monom in p.itermonoms():
        used.update(name for name, exp in zip(names, monom) if exp)
    return used


def to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def recast(p: PolyElement, ring: PolyRing) -> PolyElement:
    """Move ``p`` into ``ring`` matching variables by name."""
    if p.ring == ring:
        return p
    source = ring_names(p.ring)
    index = {name: i for i, name in enumerate(ring_names(ring))}
    terms = {}
    for monom, coeff in p.iterterms():
        exps = [0] * ring.ngens
        for name, exp in zip(source, monom):
            if not exp:
                continue
            if name not in index:
                raise PolyratError(f"variable {name} does not exist in the target ring {ring_names(ring)}")
            exps[index[name]] = exp
        terms[tuple(exps)] = coeff
    return ring.from_dict(terms)


def univariate_coefficients(p: PolyElement, var: str = "x") -> list[Fraction]:
    """Dense ascending coefficients of a polynomial that only uses ``var``."""
    names = ring_names(p.ring)
    extra = used_names(p) - {var}
    if extra:
        raise PolyratError(f"expected a polynomial in {var} alone, found {sorted(extra)}")
    if not p:
        return [Fraction(0)]
    i = names.index(var) if var in names else None
    degree = max(monom[i] for monom in p.itermonoms()) if i is not None else 0
    coeffs = [Fraction(0)] * (degree + 1)
    for monom, coeff in p.iterterms():
        coeffs[monom[i] if i is not None else 0] = to_fraction(coeff)
    return coeffs


def horner(coeffs: list[Fraction], point: Fraction) -> Fraction:
    value = Fraction(0)
    for coeff in reversed(coeffs):
        value = value * point + coeff
    return value


def _strip_common_monomial(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    monoms = list(num.itermonoms()) + list(den.itermonoms())
    common = tuple(min(exps) for exps in zip(*monoms))
    if not any(common):
        return num, den
    ring = num.ring

    def shift(p):
        return ring.from_dict({tuple(e - c for e, c in zip(monom, common)): coeff for monom, coeff in p.iterterms()})

    return shift(num), shift(den)


def substitute_cleared(
    p: PolyElement, var: str, num: PolyElement, den: PolyElement, degree: int, ring: PolyRing
) -> PolyElement:
    """``p(var := num/den) * den**degree`` as a polynomial of ``ring``.

    ``degree`` must be at least the ``var``-degree of ``p``; ``num`` and ``den`` already
    live in ``ring``.
    """
    source = ring_names(p.ring)
    i = source.index(var)
    buckets: dict[int, dict[tuple[int, ...], object]] = {}
    for monom, coeff in p.iterterms():
        k = monom[i]
        rest = monom[:i] + (0,) + monom[i + 1 :]
        buckets.setdefault(k, {})[rest] = coeff
    num_powers = [ring.one]
    den_powers = [ring.one]
    for _ in range(degree):
        num_powers.append(num_powers[-1] * num)
        den_powers.append(den_powers[-1] * den)
    result = ring.zero
    for k, terms in buckets.items():
        coefficient = recast(p.ring.from_dict(terms), ring)
        result += coefficient * num_powers[k] * den_powers[degree - k]
    return result


def parse_polynomial(text: str, names: tuple[str, ...]) -> PolyElement:
    """Read ``"1 - 4*x + 6*x^2"`` (``^`` or ``**``) into QQ[names]."""
    ring = polynomial_ring(tuple(names))
    try:
        return ring.from_expr(sympify(text, locals={name: Symbol(name) for name in names}))
    except (SympifyError, ValueError, TypeError) as exc:
        raise PolyratError(f"cannot read {text!r} as a polynomial in {list(names)}") from exc


def render_polynomial(p: PolyElement) -> str:
    """Canonical text: terms by ascending total degree then exponent vector, explicit signs."""
    if not p:
        return "0"
    names = ring_names(p.ring)
    terms = sorted(p.iterterms(), key=lambda term: (sum(term[0]), term[0]))
    out = []
    for position, (monom, coeff) in enumerate(terms):
        value = to_fraction(coeff)
        factors = [name if exp == 1 else f"{name}^{exp}" for name, exp in zip(names, monom) if exp]
        magnitude = abs(value)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = f"{magnitude}*" + "*".join(factors)
        if position == 0:
            out.append(f"-{body}" if value < 0 else body)
        else:
            out.append(f" - {body}" if value < 0 else f" + {body}")
    return "".join(out)


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """A normalized fraction ``num/den`` of polynomials over one ring.

    Build instances with ``RationalFunction.new`` (or the helpers below); the raw
    constructor does not normalize.
    """

    num: PolyElement
    den: PolyElement

    __hash__ = None

    @classmethod
    def new(cls, num: PolyElement, den: PolyElement) -> "RationalFunction":
        if num.ring != den.ring:
            ring = polynomial_ring(sort_variables(ring_names(num.ring) + ring_names(den.ring)))
            num, den = recast(num, ring), recast(den, ring)
        ring = num.ring
        if not den:
            raise ZeroDivisionRationalError("denominator is zero")
        if not num:
            return cls(ring.zero, ring.one)
        if ring.ngens == 1:
            _, num, den = num.cofactors(den)
        else:
            num, den = _strip_common_monomial(num, den)
        content = QQ.gcd(num.content(), den.content())
        if content != QQ.one:
            num, den = num.quo_ground(content), den.quo_ground(content)
        if den.LC < 0:
            num, den = -num, -den
        return cls(num, den)

    @classmethod
    def from_polynomial(cls, p: PolyElement) -> "RationalFunction":
        return cls.new(p, p.ring.one)

    @classmethod
    def constant(cls, value, names: tuple[str, ...] = ("x",)) -> "RationalFunction":
        ring = polynomial_ring(names)
        return cls.new(ring.ground_new(to_qq(value)), ring.one)

    @classmethod
    def variable(cls, name: str, names: tuple[str, ...] | None = None) -> "RationalFunction":
        ring = polynomial_ring(names or (name,))
        return cls(generator(ring, name), ring.one)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def variables(self) -> tuple[str, ...]:
        return ring_names(self.ring)

    @property
    def free_variables(self) -> set[str]:
        return used_names(self.num) | used_names(self.den)

    @property
    def is_zero(self) -> bool:
        return not self.num

    def recast(self, names: tuple[str, ...]) -> "RationalFunction":
        ring = polynomial_ring(tuple(names))
        return RationalFunction.new(recast(self.num, ring), recast(self.den, ring))

    def univariate(self, var: str = "x") -> "RationalFunction":
        """The same function in the ring QQ[var]; fails if another variable is still used."""
        extra = self.free_variables - {var}
        if extra:
            raise PolyratError(f"expected a function of {var} alone, found {sorted(extra)}")
        return self.recast((var,))

    def _coerce(self, other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, PolyElement):
            return RationalFunction.from_polynomial(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFunction.new(self.ring.ground_new(to_qq(other)), self.ring.one)
        return None

    @staticmethod
    def _unify(f: "RationalFunction", g: "RationalFunction") -> tuple["RationalFunction", "RationalFunction"]:
        if f.ring == g.ring:
            return f, g
        names = sort_variables(f.variables + g.variables)
        return f.recast(names), g.recast(names)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f, g = self._unify(self, other)
        if f.den == g.den:
            return RationalFunction.new(f.num + g.num, f.den)
        return RationalFunction.new(f.num * g.den + g.num * f.den, f.den * g.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f, g = self._unify(self, other)
        return RationalFunction.new(f.num * g.num, f.den * g.den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionRationalError("division by the zero rational function")
        return RationalFunction.new(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionRationalError("division by the zero rational function")
        f, g = self._unify(self, other)
        return RationalFunction.new(f.num * g.den, f.den * g.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.reciprocal() ** -exponent
        return RationalFunction.new(self.num**exponent, self.den**exponent)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f, g = self._unify(self, other)
        return f.num * g.den == g.num * f.den

    def substitute(self, var: str, value) -> "RationalFunction":
        """Compose: replace ``var`` by ``value`` (a rational function or a number)."""
        if var not in self.free_variables:
            return self
        remaining = [name for name in self.variables if name != var]
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            names = sort_variables(remaining) or ("x",)
            value = RationalFunction.constant(value, names)
        elif not isinstance(value, RationalFunction):
            value = self._coerce(value)
        names = sort_variables(remaining + sorted(value.free_variables)) or ("x",)
        ring = polynomial_ring(names)
        value_num, value_den = recast(value.num, ring), recast(value.den, ring)
        gen = generator(self.ring, var)
        degree = max(self.num.degree(gen), self.den.degree(gen))
        num = substitute_cleared(self.num, var, value_num, value_den, degree, ring)
        den = substitute_cleared(self.den, var, value_num, value_den, degree, ring)
        if not den:
            raise ZeroDivisionRationalError(f"substituting {var} makes the denominator vanish")
        return RationalFunction.new(num, den)

    def specialize(self, var: str, value) -> "RationalFunction":
        """Set ``var`` to a number and drop it from the variable list."""
        result = self.substitute(var, Fraction(value))
        if var in result.variables:
            names = tuple(name for name in result.variables if name != var) or ("x",)
            result = result.recast(names)
        return result

    def evaluate(self, point: dict[str, object]) -> "RationalFunction":
        result = self
        for var, value in point.items():
            result = result.specialize(var, value)
        return result

    def differentiate(self, var: str) -> "RationalFunction":
        if var not in self.free_variables:
            return RationalFunction.new(self.ring.zero, self.ring.one)
        gen = generator(self.ring, var)
        num_d, den_d = self.num.diff(gen), self.den.diff(gen)
        return RationalFunction.new(num_d * self.den - self.num * den_d, self.den * self.den)

    def display_pair(self) -> tuple[PolyElement, PolyElement]:
        """(num, den) with the denominator's lowest-order coefficient positive."""
        lowest = min(self.den.iterterms(), key=lambda term: (sum(term[0]), term[0]))
        if lowest[1] < 0:
            return -self.num, -self.den
        return self.num, self.den

    def render(self) -> str:
        num, den = self.display_pair()
        if den == den.ring.one:
            return render_polynomial(num)
        return f"({render_polynomial(num)})/({render_polynomial(den)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RationalFunction({self.render()!r}, vars={list(self.variables)})"

    def to_json(self) -> dict:
        num, den = self.display_pair()

        def terms(p):
            return [
                {"exp": [str(e) for e in monom], "coef": str(to_fraction(coeff))}
                for monom, coeff in sorted(p.iterterms(), key=lambda term: term[0])
            ]

        return {"vars": list(self.variables), "num": terms(num), "den": terms(den)}

    @classmethod
    def from_json(cls, payload: dict) -> "RationalFunction":
        names = tuple(payload["vars"])
        ring = polynomial_ring(names)

        def build(terms):
            return ring.from_dict(
                {tuple(int(e) for e in term["exp"]): to_qq(Fraction(term["coef"])) for term in terms}
            )

        return cls.new(build(payload["num"]), build(payload["den"]))


def x_ring() -> PolyRing:
    return polynomial_ring(("x",))


def one_minus_x_inverse(names: tuple[str, ...] = ("x",)) -> RationalFunction:
    """``1/(1-x)``, the weight of a column whose entry is at least 1."""
    ring = polynomial_ring(names)
    x = generator(ring, "x")
    return RationalFunction.new(ring.one, ring.one - x)


__all__ = [
    "NoRootError",
    "PoleAtOriginError",
    "PolyratError",
    "RationalFunction",
    "SingularSystemError",
    "ZeroDivisionRationalError",
    "generator",
    "horner",
    "marker_names",
    "one_minus_x_inverse",
    "parse_polynomial",
    "polynomial_ring",
    "recast",
    "render_polynomial",
    "ring_names",
    "sort_variables",
    "substitute_cleared",
    "to_fraction",
    "to_qq",
    "univariate_coefficients",
    "used_names",
    "x_ring",
]
