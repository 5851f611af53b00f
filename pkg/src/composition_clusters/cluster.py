"""
Cluster engine: states, the B_s linear system and the resulting generating functions.

A cluster is a chain of groups: start columns p_1 = 1 < p_2 < ... with consecutive gaps in
1..a-1, and at each start column a nonempty subset of patterns. Its skyline is the
columnwise maximum of the patterns it places; a cluster's weight is
``sign * x^Sum(skyline) * t^width``. Clusters are classified by the first a entries of
their skyline (the state); peeling off the first group expresses each state's weight
enumerator B_s through the enumerators of the remaining chain, which gives a square
linear system. Substituting t := 1/(1-x) accounts for every composition that dominates a
skyline column by column.
"""

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Literal

from sympy.polys.rings import PolyElement

from .compositions import PatternSet, PositionError
from .polyrat import PolyratError, RationalFunction, bareiss_solve, marker_names, one_minus_x_inverse, polynomial_ring
from .polyrat.base import generator, recast, render_polynomial, substitute_cleared

logger = logging.getLogger(__name__)

Mode = Literal["plain", "marker"]

# sorted 0-based pattern indices sharing one start column
GroupSubset = tuple[int, ...]


@dataclass(frozen=True, order=True)
class State:
    """The first a entries of a cluster's skyline."""

    prefix: tuple[int, ...]

    @property
    def sum(self) -> int:
        return sum(self.prefix)

    @property
    def label(self) -> str:
        if all(entry < 10 for entry in self.prefix):
            return "".join(str(entry) for entry in self.prefix)
        return ",".join(str(entry) for entry in self.prefix)

    def __str__(self) -> str:
        return self.label


def group_subsets(r: int) -> list[GroupSubset]:
    return [subset for size in range(1, r + 1) for subset in itertools.combinations(range(r), size)]


def subset_skyline(T: GroupSubset, A: PatternSet) -> State:
    if not T:
        raise PositionError("a group must contain at least one pattern")
    return State(tuple(max(column) for column in zip(*(A[i].parts for i in T))))


def merge_state(T: GroupSubset, j: int, child: State, A: PatternSet) -> tuple[State, int]:
    """Put group T in front of a cluster in state ``child``, ``j`` columns ahead of it.

    Returns the parent state and the exponent of x in the transition weight; the weight
    itself is ``x^e * t^j * sign(T)``.
    """
    a = A.common_length
    if not 1 <= j <= a - 1:
        raise PositionError(f"overlap offset {j} outside 1..{a - 1}")
    top = subset_skyline(T, A).prefix
    child_prefix = child.prefix
    parent = top[:j] + tuple(max(top[i], child_prefix[i - j]) for i in range(j, a))
    exponent = sum(parent) - sum(child_prefix[: a - j])
    return State(parent), exponent


def enumerate_states(A: PatternSet) -> list[State]:
    """Least set of states containing every group skyline and closed under merge_state."""
    if not len(A):
        return []
    a = A.common_length
    subsets = group_subsets(len(A))
    states = {subset_skyline(T, A) for T in subsets}
    frontier = sorted(states)
    while frontier:
        child = frontier.pop()
        for T in subsets:
            for j in range(1, a):
                parent, _ = merge_state(T, j, child, A)
                if parent not in states:
                    states.add(parent)
                    frontier.append(parent)
    return sorted(states)


@dataclass(frozen=True)
class Transition:
    parent: State
    child: State
    subset: GroupSubset
    offset: int
    x_exponent: int


def transitions(A: PatternSet, states: list[State]) -> list[Transition]:
    out = []
    for child in states:
        for T in group_subsets(len(A)):
            for j in range(1, A.common_length):
                parent, exponent = merge_state(T, j, child, A)
                out.append(Transition(parent, child, T, j, exponent))
    return out


def _system_names(A: PatternSet, mode: Mode) -> tuple[str, ...]:
    if mode == "plain":
        return ("x", "t")
    if mode == "marker":
        return ("x", "t") + marker_names(len(A))
    raise ValueError(f"unknown mode {mode!r}")


def group_sign(T: GroupSubset, ring, mode: Mode) -> PolyElement:
    """(-1)^|T| in plain mode, prod_{i in T} (X_i - 1) in marker mode."""
    if mode == "plain":
        return ring.one if len(T) % 2 == 0 else -ring.one
    sign = ring.one
    for i in T:
        sign *= generator(ring, f"X{i + 1}") - 1
    return sign


@dataclass(frozen=True)
class ClusterSystem:
    """``matrix @ B = rhs`` with ``matrix = I - W``; rows and columns follow ``states``."""

    pattern_set: PatternSet
    mode: Mode
    states: tuple[State, ...]
    matrix: tuple[tuple[PolyElement, ...], ...]
    rhs: tuple[PolyElement, ...]
    transition_count: int = field(default=0, compare=False)

    @property
    def ring(self):
        return polynomial_ring(_system_names(self.pattern_set, self.mode))

    def __len__(self) -> int:
        return len(self.states)

    def equation(self, row: int) -> str:
        """``B_s = terminal + sum w * B_child`` with the original right-hand side grouping."""
        ring = self.ring
        parts = []
        if self.rhs[row]:
            parts.append(render_polynomial(self.rhs[row]))
        for col, state in enumerate(self.states):
            weight = (ring.one if row == col else ring.zero) - self.matrix[row][col]
            if not weight:
                continue
            text = render_polynomial(weight)
            if len(weight) > 1:
                text = f"({text})"
            if text == "1":
                term = f"B_{state}"
            elif text == "-1":
                term = f"-B_{state}"
            else:
                term = f"{text}*B_{state}"
            if parts and term.startswith("-"):
                parts.append(f" - {term[1:]}")
            elif parts:
                parts.append(f" + {term}")
            else:
                parts.append(term)
        return f"B_{self.states[row]} = " + ("".join(parts) if parts else "0")

    def equations(self) -> list[str]:
        return [self.equation(row) for row in range(len(self.states))]


def build_system(A: PatternSet, mode: Mode = "plain") -> ClusterSystem:
    ring = polynomial_ring(_system_names(A, mode))
    states = enumerate_states(A)
    index = {state: i for i, state in enumerate(states)}
    n = len(states)
    a = A.common_length
    x = generator(ring, "x")
    t = generator(ring, "t")

    matrix = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    rhs = [ring.zero] * n
    signs = {T: group_sign(T, ring, mode) for T in group_subsets(len(A))}
    for T, sign in signs.items():
        state = subset_skyline(T, A)
        rhs[index[state]] += sign * x ** state.sum * t**a
    moves = transitions(A, states)
    for move in moves:
        weight = signs[move.subset] * x**move.x_exponent * t**move.offset
        matrix[index[move.parent]][index[move.child]] -= weight
    logger.debug("System for %s (%s): %d state(s), %d transition(s)", A, mode, n, len(moves))
    return ClusterSystem(
        pattern_set=A,
        mode=mode,
        states=tuple(states),
        matrix=tuple(tuple(row) for row in matrix),
        rhs=tuple(rhs),
        transition_count=len(moves),
    )


def _cancel_factor(f: RationalFunction, factor: PolyElement) -> RationalFunction:
    """Divide a known polynomial factor out of num and den for as long as both admit it."""
    factor = recast(factor, f.ring)
    num, den = f.num, f.den
    while num:
        q_num, r_num = num.div(factor)
        if r_num:
            break
        q_den, r_den = den.div(factor)
        if r_den:
            break
        num, den = q_num, q_den
    return RationalFunction.new(num, den)


def cluster_gf(A: PatternSet, mode: Mode = "plain") -> RationalFunction:
    """Sum of all B_s with t := 1/(1-x).

    The substitution is applied entrywise before solving; every row is multiplied by
    (1-x)^a so the system stays polynomial.
    """
    names = tuple(name for name in _system_names(A, mode) if name != "t")
    target = polynomial_ring(names)
    if not len(A):
        return RationalFunction.new(target.zero, target.one)
    system = build_system(A, mode)
    a = A.common_length
    x = target.gens[0]
    one_minus_x = target.one - x

    def clear(entry):
        return substitute_cleared(entry, "t", target.one, one_minus_x, a, target)

    matrix = [[clear(entry) for entry in row] for row in system.matrix]
    rhs = [clear(entry) for entry in system.rhs]
    y, det = bareiss_solve(matrix, rhs)
    total = target.zero
    for value in y:
        total += value
    g = RationalFunction.new(total, det)
    if mode == "marker":
        g = _cancel_factor(g, one_minus_x)
    logger.info("Cluster engine: %d state(s) for %s (%s mode)", len(system), A, mode)
    return g


def _final_gf(g: RationalFunction) -> RationalFunction:
    """F = 1/(1 - x/(1-x) - G), checked by cross-multiplication."""
    x = RationalFunction.variable("x", g.variables)
    denominator = 1 - x * one_minus_x_inverse(g.variables) - g
    f = denominator.reciprocal()
    if f.ring.ngens > 1:
        f = _cancel_factor(f, f.ring.one - f.ring.gens[0])
    if f * denominator != 1:
        raise PolyratError("generating function failed its cross-multiplication check")
    return f


@dataclass(frozen=True)
class EngineResult:
    G: RationalFunction
    F: RationalFunction
    states_count: int
    mode: Mode = "plain"

    def to_dict(self) -> dict:
        return {"states": str(self.states_count), "mode": self.mode, "G": self.G.to_json(), "F": self.F.to_json()}


def avoider_gf(A: PatternSet) -> EngineResult:
    g = cluster_gf(A, "plain")
    return EngineResult(G=g, F=_final_gf(g), states_count=len(enumerate_states(A)), mode="plain")


def joint_gf(A: PatternSet) -> RationalFunction:
    """F_S(x; X_1..X_r): X_i marks occurrences of the i-th pattern."""
    return _final_gf(cluster_gf(A, "marker"))


@dataclass(frozen=True)
class ExplainReport:
    """Intermediate artifacts of a plain-mode run, in the order they are derived."""

    pattern_set: PatternSet
    states: tuple[State, ...]
    equations: tuple[str, ...]
    solutions: tuple[RationalFunction, ...]
    G_xt: RationalFunction
    G: RationalFunction
    F: RationalFunction

    def to_dict(self) -> dict:
        return {
            "patterns": str(self.pattern_set),
            "states": [state.label for state in self.states],
            "equations": list(self.equations),
            "solutions": {state.label: solution.to_json() for state, solution in zip(self.states, self.solutions)},
            "G_xt": self.G_xt.to_json(),
            "G": self.G.to_json(),
            "F": self.F.to_json(),
        }

    def render(self) -> str:
        lines = [f"patterns: {self.pattern_set}", "states: " + ", ".join(state.label for state in self.states), ""]
        lines.append("system:")
        lines.extend(f"  {equation}" for equation in self.equations)
        lines.append("")
        lines.append("solution:")
        lines.extend(f"  B_{state} = {solution}" for state, solution in zip(self.states, self.solutions))
        lines.append("")
        lines.append(f"G(x,t) = {self.G_xt}")
        lines.append(f"G(x) = G(x, 1/(1-x)) = {self.G}")
        lines.append(f"F(x) = 1/(1 - x/(1-x) - G(x)) = {self.F}")
        return "\n".join(lines)


def explain_system(A: PatternSet) -> ExplainReport:
    """Solve the plain system over {x, t} without early substitution; meant for small sets."""
    if not len(A):
        raise PolyratError("the empty pattern set has no cluster system")
    system = build_system(A, "plain")
    y, det = bareiss_solve(system.matrix, system.rhs)
    total = system.ring.zero
    for value in y:
        total += value
    g_xt = RationalFunction.new(total, det)
    g = g_xt.substitute("t", one_minus_x_inverse()).univariate("x")
    return ExplainReport(
        pattern_set=A,
        states=system.states,
        equations=tuple(system.equations()),
        solutions=tuple(RationalFunction.new(value, det) for value in y),
        G_xt=g_xt,
        G=g,
        F=_final_gf(g),
    )


@dataclass(frozen=True)
class Cluster:
    """An explicit cluster: ``groups`` are (1-based start column, subset) pairs."""

    groups: tuple[tuple[int, GroupSubset], ...]
    skyline: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.skyline)

    @property
    def sign(self) -> int:
        return -1 if sum(len(T) for _, T in self.groups) % 2 else 1

    def state(self, a: int) -> State:
        return State(self.skyline[:a])


def brute_force_clusters(A: PatternSet, max_width: int) -> Iterator[Cluster]:
    """Every cluster of width <= max_width, listed explicitly."""
    if not len(A):
        return
    a = A.common_length
    subsets = group_subsets(len(A))
    skylines = {T: subset_skyline(T, A).prefix for T in subsets}

    def extend(groups, skyline):
        yield Cluster(tuple(groups), tuple(skyline))
        last = groups[-1][0]
        for j in range(1, a):
            start = last + j
            if start + a - 1 > max_width:
                break
            for T in subsets:
                grown = list(skyline) + [0] * (start + a - 1 - len(skyline))
                for k, value in enumerate(skylines[T]):
                    grown[start - 1 + k] = max(grown[start - 1 + k], value)
                yield from extend(groups + [(start, T)], grown)

    if a > max_width:
        return
    for T in subsets:
        yield from extend([(1, T)], list(skylines[T]))
