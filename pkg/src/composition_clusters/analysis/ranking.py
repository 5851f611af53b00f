"""
Rank single patterns by the growth constant of their avoiders.

Behavior:
- Lists every composition with 2 <= sum <= max_sum
- Keeps one representative per reversal class (the lexicographically smaller member)
- Computes growth() per representative on a pool of worker threads
- Groups rows by pattern sum and sorts each group by ascending lambda
- A pattern whose computation fails stays in the table with ``error`` set
"""

import logging
import os
import queue
import threading
from dataclasses import dataclass
from fractions import Fraction

from ..cluster import avoider_gf
from ..compositions import Composition, PatternSet, enumerate_compositions
from ..polyrat import PolyratError, render_polynomial
from .growth import GrowthError, GrowthEstimate, growth_of

logger = logging.getLogger(__name__)

WORKERS = int(os.environ.get("COMPOSITION_CLUSTERS_WORKERS", "1"))


@dataclass(frozen=True)
class RankRow:
    pattern: Composition
    twin: Composition | None
    estimate: GrowthEstimate | None = None
    minimal_polynomial: str | None = None
    error: str | None = None

    @property
    def rate(self) -> str | None:
        return self.estimate.rate if self.estimate else None

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.label,
            "twin": self.twin.label if self.twin else None,
            "lambda": self.rate,
            "amplitude": self.estimate.amplitude if self.estimate else None,
            "minimal_polynomial": self.minimal_polynomial,
            "error": self.error,
        }


@dataclass(frozen=True)
class RankTable:
    max_sum: int
    digits: int
    groups: dict[int, tuple[RankRow, ...]]

    def rows(self) -> list[RankRow]:
        return [row for total in sorted(self.groups) for row in self.groups[total]]

    def find(self, pattern: Composition | str) -> RankRow | None:
        """The row whose representative or twin is ``pattern`` (a composition or its label)."""
        label = pattern if isinstance(pattern, str) else pattern.label
        for row in self.rows():
            if row.pattern.label == label or (row.twin is not None and row.twin.label == label):
                return row
        return None

    def to_dict(self) -> dict:
        return {
            "max_sum": str(self.max_sum),
            "digits": str(self.digits),
            "groups": {str(total): [row.to_dict() for row in rows] for total, rows in sorted(self.groups.items())},
        }

    def render(self) -> str:
        lines = []
        for total in sorted(self.groups):
            cells = []
            for row in self.groups[total]:
                detail = row.rate if row.error is None else f"error: {row.error}"
                cells.append(f"{row.pattern} ({detail})")
            lines.append(f"n={total}: " + ", ".join(cells))
        return "\n".join(lines)


def reversal_representatives(max_sum: int) -> list[tuple[Composition, Composition | None]]:
    """(representative, twin) per reversal class; twin is None for palindromes."""
    seen = set()
    out = []
    for total in range(2, max_sum + 1):
        for composition in enumerate_compositions(total):
            mirrored = composition.reversed()
            representative = min(composition, mirrored, key=lambda c: c.parts)
            if representative in seen:
                continue
            seen.add(representative)
            twin = None if mirrored == composition else max(composition, mirrored, key=lambda c: c.parts)
            out.append((representative, twin))
    return out


def _rank_one(pattern: Composition, twin: Composition | None, digits: int) -> RankRow:
    try:
        F = avoider_gf(PatternSet((pattern,))).F
        estimate = growth_of(F, digits)
        _, den = F.display_pair()
        return RankRow(pattern=pattern, twin=twin, estimate=estimate, minimal_polynomial=render_polynomial(den))
    except (GrowthError, PolyratError) as exc:
        logger.warning("Ranking failed for %s: %s", pattern, exc.message)
        return RankRow(pattern=pattern, twin=twin, error=exc.message)


def _sort_key(row: RankRow):
    if row.estimate is None:
        return (1, Fraction(0), row.pattern.parts)
    # ascending lambda is descending x0
    return (0, -row.estimate.x0.hi, row.pattern.parts)


def rank_patterns(max_sum: int = 6, digits: int = 12, workers: int | None = None) -> RankTable:
    if max_sum < 2:
        raise ValueError(f"max_sum must be at least 2, got {max_sum}")
    workers = WORKERS if workers is None else workers
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    classes = reversal_representatives(max_sum)
    total = len(classes)

    work: queue.Queue[tuple[int, Composition, Composition | None] | None] = queue.Queue()
    results: list[RankRow | None] = [None] * total
    results_lock = threading.Lock()
    index_counter = [0]

    def rank_worker() -> None:
        while True:
            item = work.get()
            if item is None:
                work.task_done()
                break
            position, pattern, twin = item
            try:
                row = _rank_one(pattern, twin, digits)
            except Exception as exc:
                logger.exception("Ranking crashed for %s", pattern)
                row = RankRow(pattern=pattern, twin=twin, error=f"{type(exc).__name__}: {exc}")
            try:
                with results_lock:
                    results[position] = row
                    index_counter[0] += 1
                    current_index = index_counter[0]
                percent = int((current_index / total) * 100) if total > 0 else 0
                logger.info(f"RANK {current_index}/{total} ({percent}% completed)")
            finally:
                work.task_done()

    threads: list[threading.Thread] = []
    for i in range(workers):
        thread = threading.Thread(target=rank_worker, daemon=True, name=f"rank-worker-{i + 1}")
        thread.start()
        threads.append(thread)
    for position, (pattern, twin) in enumerate(classes):
        work.put((position, pattern, twin))
    for _ in range(workers):
        work.put(None)
    work.join()
    for thread in threads:
        thread.join()

    groups: dict[int, list[RankRow]] = {}
    for row in results:
        groups.setdefault(row.pattern.sum, []).append(row)
    return RankTable(
        max_sum=max_sum,
        digits=digits,
        groups={total: tuple(sorted(rows, key=_sort_key)) for total, rows in groups.items()},
    )
