import logging
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(kw_only=True, frozen=True)
class ReproductionOutcome:
    """The result of checking one registered reproduction."""

    checks: dict[str, bool]
    metadata: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    @property
    def score(self) -> float:
        if not self.checks:
            return 0.0
        return float(np.clip(np.mean([1.0 if ok else 0.0 for ok in self.checks.values()]), 0.0, 1.0))


# which engine entry point a reproduction exercises
ReproductionKind = Literal[
    "avoidance",
    "worked-example",
    "statistics",
    "ranking",
]


@dataclass(frozen=True)
class RankExpectation:
    pattern: str
    rate: str


@dataclass
class ReproductionSpec:
    # required fields (no defaults)
    id: str
    description: str
    kind: ReproductionKind
    # optional fields (with defaults)
    patterns: str | None = None
    series: list[int] = field(default_factory=list)
    rate: str | None = None
    amplitude: str | None = None
    tolerance: float = 1e-9
    # expected avoider generating function as text over x; compared as rational functions
    numerator: str | None = None
    denominator: str | None = None
    # joint generating function over x, X1..Xr as (numerator, denominator)
    joint: tuple[str, str] | None = None
    # worked example: label -> (numerator, denominator) over x and t
    closed_forms: dict[str, tuple[str, str]] = field(default_factory=dict)
    # statistics: rendered linear forms in n and the correlation "p/q"
    expectation: str | None = None
    variance: str | None = None
    correlation: str | None = None
    # ranking: published (pattern, lambda) pairs and the largest pattern sum
    ranking: list[RankExpectation] = field(default_factory=list)
    max_sum: int = 6
    slow: bool = False


# global list of all registered reproductions
REPRODUCTION_REGISTRY: list[ReproductionSpec] = []
