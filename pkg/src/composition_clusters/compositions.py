"""
Compositions, forbidden pattern sets and the containment relation.

A pattern b_1..b_s occurs in a host a_1..a_k at offset i when b_j <= a_{i+j-1} for every j
(consecutive, componentwise domination). Everything here is an immutable value; the
brute-force oracles are the independent reference the cluster engine is tested against.
"""

import logging
import os
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass

logger = logging.getLogger(__name__)

# n <= 26 keeps an exhaustive run near 33M compositions
ORACLE_GUARD = int(os.environ.get("COMPOSITION_CLUSTERS_ORACLE_GUARD", "26"))


class CompositionError(Exception):
    """Raised when a composition, a pattern set or an oracle request is invalid."""

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class PatternParseError(CompositionError, ValueError):
    def __init__(self, message, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PatternSetError(CompositionError, ValueError):
    pass


class PositionError(CompositionError, IndexError):
    pass


class EnumerationGuardError(CompositionError, RuntimeError):
    def __init__(self, n: int, guard: int):
        super().__init__(f"n={n} exceeds the enumeration guard ({guard}); raise --oracle-guard to allow it")
        self.n = n
        self.guard = guard


@dataclass(frozen=True)
class Composition:
    """An ordered list of positive integers; the empty composition is the unique composition of 0."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        for part in parts:
            if isinstance(part, bool) or not isinstance(part, int) or part < 1:
                raise CompositionError(f"composition parts must be positive integers, got {part!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def sum(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def reversed(self) -> "Composition":
        return Composition(self.parts[::-1])

    def dominates(self, other: "Composition") -> bool:
        """Componentwise domination between compositions of equal length."""
        return len(self) == len(other) and all(p >= q for p, q in zip(self.parts, other.parts))

    @property
    def label(self) -> str:
        # the digit-string form ("34543") only reads unambiguously when every part is a digit
        if all(part < 10 for part in self.parts):
            return "".join(str(part) for part in self.parts)
        return ",".join(str(part) for part in self.parts)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class OccurrenceVector:
    """Per-pattern occurrence counts of a host composition (one count per (pattern, start) pair)."""

    counts: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, index: int) -> int:
        return self.counts[index]

    @property
    def is_zero(self) -> bool:
        return not any(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


@dataclass(frozen=True)
class PatternSet:
    """The forbidden set A: distinct nonempty compositions sharing one length a.

    The empty set is accepted as the trivial baseline; its common length is 0.
    """

    patterns: tuple[Composition, ...]

    def __post_init__(self):
        patterns = tuple(p if isinstance(p, Composition) else Composition(tuple(p)) for p in self.patterns)
        object.__setattr__(self, "patterns", patterns)
        if any(len(p) == 0 for p in patterns):
            raise PatternSetError("patterns must be nonempty")
        if len(set(patterns)) != len(patterns):
            raise PatternSetError("patterns must be pairwise distinct")
        if len({len(p) for p in patterns}) > 1:
            raise PatternSetError("patterns must share one length")

    @classmethod
    def of(cls, *patterns) -> "PatternSet":
        """Build from plain sequences, e.g. ``PatternSet.of([2, 3, 4], [4, 3, 2])``."""
        return cls(tuple(Composition(tuple(p)) for p in patterns))

    @classmethod
    def parse(cls, text: str) -> "PatternSet":
        return parse_patterns(text)

    @property
    def common_length(self) -> int:
        return len(self.patterns[0]) if self.patterns else 0

    @property
    def marker_count(self) -> int:
        return len(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[Composition]:
        return iter(self.patterns)

    def __getitem__(self, index: int) -> Composition:
        return self.patterns[index]

    def reversed(self) -> "PatternSet":
        return PatternSet(tuple(p.reversed() for p in self.patterns))

    @property
    def max_part(self) -> int:
        return max((max(p.parts) for p in self.patterns), default=0)

    @property
    def min_sum(self) -> int:
        return min((p.sum for p in self.patterns), default=0)

    def __str__(self) -> str:
        return ";".join(",".join(str(part) for part in p) for p in self.patterns)


def parse_patterns(text: str) -> PatternSet:
    """Parse ``"2,3,4;4,3,2"``: commas separate parts, semicolons separate patterns.

    Whitespace is ignored. Errors carry the 0-based character position.
    """
    patterns: list[list[int]] = []
    current: list[int] = []
    digits = ""
    digits_start = 0

    def flush(position: int):
        nonlocal digits
        if not digits:
            raise PatternParseError("expected a positive integer", position)
        value = int(digits)
        if value < 1:
            raise PatternParseError("parts must be positive", digits_start)
        current.append(value)
        digits = ""

    for position, char in enumerate(text):
        if char.isspace():
            continue
        if char in "0123456789":
            if not digits:
                digits_start = position
            digits += char
        elif char == ",":
            flush(position)
        elif char == ";":
            flush(position)
            patterns.append(current)
            current = []
        else:
            raise PatternParseError(f"unexpected character {char!r}", position)

    if not patterns and not current and not digits:
        raise PatternParseError("expected at least one pattern", len(text))
    flush(len(text))
    patterns.append(current)
    logger.debug("Parsed %d pattern(s) from %r", len(patterns), text)
    return PatternSet(tuple(Composition(tuple(p)) for p in patterns))


def includes_at(host: Composition, pattern: Composition, i: int) -> bool:
    """True iff ``pattern`` is dominated by the window of ``host`` starting at 1-based offset ``i``."""
    last = len(host) - len(pattern) + 1
    if not 1 <= i <= last:
        raise PositionError(f"offset {i} outside 1..{last}")
    start = i - 1
    return all(b <= host.parts[start + j] for j, b in enumerate(pattern.parts))


def includes(host: Composition, pattern: Composition) -> bool:
    if len(host) < len(pattern):
        return False
    return any(includes_at(host, pattern, i) for i in range(1, len(host) - len(pattern) + 2))


def occurrences(host: Composition, A: PatternSet) -> OccurrenceVector:
    counts = []
    for pattern in A:
        if len(host) < len(pattern):
            counts.append(0)
            continue
        counts.append(sum(1 for i in range(1, len(host) - len(pattern) + 2) if includes_at(host, pattern, i)))
    return OccurrenceVector(tuple(counts))


def avoids(host: Composition, A: PatternSet) -> bool:
    return not any(includes(host, pattern) for pattern in A)


def _check_guard(n: int, guard: int | None) -> None:
    if n < 0:
        raise CompositionError(f"n must be nonnegative, got {n}")
    guard = ORACLE_GUARD if guard is None else guard
    if n > guard:
        raise EnumerationGuardError(n, guard)


def enumerate_compositions(n: int, guard: int | None = None) -> Iterator[Composition]:
    """Yield every composition of ``n`` once, in binary-counter order over subsets of {1..n-1}.

    Bit ``b`` of the counter set means "cut after position b+1"; counter 0 yields ``[n]``.
    """
    _check_guard(n, guard)
    if n == 0:
        yield Composition(())
        return
    for mask in range(1 << (n - 1)):
        parts = []
        run = 1
        for bit in range(n - 1):
            if mask >> bit & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(tuple(parts))


def _window_hits(tail: tuple[int, ...], A: PatternSet) -> tuple[int, ...]:
    """Which patterns are dominated by the last a parts in ``tail``."""
    a = A.common_length
    if len(tail) < a:
        return (0,) * len(A)
    window = tail[-a:]
    return tuple(1 if all(b <= w for b, w in zip(p.parts, window)) else 0 for p in A)


def oracle_avoider_counts(N: int, A: PatternSet, guard: int | None = None) -> list[int]:
    """Brute-force avoider counts for n = 0..N in one pruned depth-first sweep.

    Containment is consecutive, so a prefix that already contains a pattern can be
    abandoned together with all its extensions.
    """
    _check_guard(N, guard)
    counts = [0] * (N + 1)
    a = A.common_length
    keep = max(a - 1, 0)

    def walk(total: int, tail: tuple[int, ...]):
        counts[total] += 1
        for part in range(1, N - total + 1):
            extended = tail + (part,)
            if A.patterns and any(_window_hits(extended, A)):
                continue
            walk(total + part, extended[-keep:] if keep else ())

    walk(0, ())
    return counts


def oracle_avoider_count(n: int, A: PatternSet, guard: int | None = None) -> int:
    return oracle_avoider_counts(n, A, guard)[n]


def oracle_joint_counts(n: int, A: PatternSet, guard: int | None = None) -> dict[OccurrenceVector, int]:
    """Map each occurrence vector to the number of compositions of ``n`` realising it."""
    tally = Counter(occurrences(host, A) for host in enumerate_compositions(n, guard))
    logger.debug("Joint oracle n=%d: %d distinct occurrence vectors", n, len(tally))
    return dict(tally)
