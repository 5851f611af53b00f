"""
Runner for registered reproductions.

Each reproduction is a list of independent checks against the engine:
1. Series prefix equals the published terms exactly
2. Avoider (and joint) generating functions equal the published ones as rational functions
3. Growth constant and amplitude agree with the published decimals
4. Worked-example closed forms, moment formulas and ranking rows, where registered
"""

import logging

import numpy as np

from . import reproductions
from .analysis import growth_of, moments, rank_patterns
from .cluster import avoider_gf, explain_system, joint_gf
from .compositions import PatternSet, parse_patterns
from .polyrat import RationalFunction, marker_names, parse_polynomial, series_coefficients
from .spec import REPRODUCTION_REGISTRY, ReproductionOutcome, ReproductionSpec
from .utils import import_submodules

logger = logging.getLogger(__name__)

# register every published reproduction
import_submodules(reproductions)

# digits requested from growth estimates before comparing against published decimals
GROWTH_DIGITS = 15


def _close(actual: str | None, expected: str, tolerance: float) -> bool:
    if actual is None:
        return False
    return bool(np.isclose(float(actual), float(expected), rtol=0.0, atol=tolerance))


def _rational(pair: tuple[str, str], names: tuple[str, ...]) -> RationalFunction:
    numerator, denominator = pair
    return RationalFunction.new(parse_polynomial(numerator, names), parse_polynomial(denominator, names))


class ReproductionRunner:
    """Checks one registered reproduction against freshly computed results."""

    def __init__(self, spec: ReproductionSpec, workers: int | None = None):
        """
        Initialize the reproduction runner.

        Args:
            spec: The registered reproduction to check
            workers: Worker threads for ranking reproductions (default: environment setting)
        """
        self.spec = spec
        self.workers = workers
        self.pattern_set: PatternSet | None = parse_patterns(spec.patterns) if spec.patterns else None
        self.checks: dict[str, bool] = {}
        self.metadata: dict[str, object] = {}

    def _record(self, name: str, ok: bool) -> None:
        self.checks[name] = ok
        if ok:
            logger.info(f"{self.spec.id}: {name} ok")
        else:
            logger.warning(f"{self.spec.id}: {name} FAILED")

    def check_avoider(self) -> None:
        spec = self.spec
        F = avoider_gf(self.pattern_set).F
        if spec.series:
            computed = series_coefficients(F, len(spec.series) - 1).as_integers()
            self.metadata["series"] = [str(a) for a in computed]
            self._record("series", computed == spec.series)
        if spec.numerator is not None and spec.denominator is not None:
            self._record("generating_function", F == _rational((spec.numerator, spec.denominator), ("x",)))
        if spec.rate is not None:
            estimate = growth_of(F, GROWTH_DIGITS)
            self.metadata["growth"] = estimate.to_dict()
            self._record("lambda", _close(estimate.rate, spec.rate, spec.tolerance))
            if spec.amplitude is not None:
                self._record("amplitude", _close(estimate.amplitude, spec.amplitude, spec.tolerance))

    def check_joint(self) -> None:
        names = ("x", *marker_names(len(self.pattern_set)))
        self._record("joint_generating_function", joint_gf(self.pattern_set) == _rational(self.spec.joint, names))

    def check_closed_forms(self) -> None:
        report = explain_system(self.pattern_set)
        computed = {f"B_{state.label}": solution for state, solution in zip(report.states, report.solutions)}
        computed.update({"G_xt": report.G_xt, "G": report.G, "F": report.F})
        for label, pair in self.spec.closed_forms.items():
            actual = computed.get(label)
            self._record(label, actual is not None and actual == _rational(pair, ("x", "t")))

    def check_moments(self) -> None:
        spec = self.spec
        report = moments(self.pattern_set, 2)
        self.metadata["moments"] = report.to_dict()
        if spec.expectation is not None:
            self._record("expectation", all(str(form) == spec.expectation for form in report.expectation))
        if spec.variance is not None:
            self._record("variance", all(str(form) == spec.variance for form in report.variance))
        if spec.correlation is not None:
            self._record("correlation", str(report.correlation.get((0, 1))) == spec.correlation)

    def check_ranking(self) -> None:
        spec = self.spec
        table = rank_patterns(spec.max_sum, GROWTH_DIGITS, workers=self.workers)
        self.metadata["ranking"] = table.to_dict()
        for expected in spec.ranking:
            row = table.find(expected.pattern)
            ok = row is not None and _close(row.rate, expected.rate, spec.tolerance)
            self._record(f"lambda[{expected.pattern}]", ok)

    def run(self) -> ReproductionOutcome:
        """Run every check the reproduction registers."""
        spec = self.spec
        logger.info(f"Starting reproduction {spec.id} ({spec.kind})")
        if self.pattern_set is not None:
            self.check_avoider()
        if spec.joint is not None:
            self.check_joint()
        if spec.closed_forms:
            self.check_closed_forms()
        if spec.expectation or spec.variance or spec.correlation:
            self.check_moments()
        if spec.ranking:
            self.check_ranking()
        outcome = ReproductionOutcome(checks=dict(self.checks), metadata=dict(self.metadata))
        if outcome.passed:
            logger.info(f"Reproduction {spec.id} passed ({len(self.checks)} checks)")
        else:
            logger.error(f"Reproduction {spec.id} failed ({outcome.score:.0%} of checks passed)")
        return outcome


def get_reproduction(reproduction_id: str) -> ReproductionSpec:
    for spec in REPRODUCTION_REGISTRY:
        if spec.id == reproduction_id:
            return spec
    raise KeyError(f"no reproduction registered with id {reproduction_id!r}")


def run_reproduction(spec: ReproductionSpec, workers: int | None = None) -> ReproductionOutcome:
    return ReproductionRunner(spec, workers).run()
