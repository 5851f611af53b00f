import pytest

from composition_clusters.runner import ReproductionRunner, get_reproduction, run_reproduction
from composition_clusters.spec import REPRODUCTION_REGISTRY, ReproductionOutcome, ReproductionSpec


def test_registry_is_populated():
    ids = [spec.id for spec in REPRODUCTION_REGISTRY]
    assert ids == [
        "avoid-34543",
        "avoid-252-343-424",
        "fibonacci",
        "worked-example",
        "occurrences-234-432",
        "single-pattern-ranking",
    ]
    assert len(set(ids)) == len(ids)
    with pytest.raises(KeyError):
        get_reproduction("no-such-result")


@pytest.mark.parametrize("reproduction_id", ["fibonacci", "worked-example", "avoid-34543", "avoid-252-343-424"])
def test_reproduction_passes(reproduction_id):
    outcome = run_reproduction(get_reproduction(reproduction_id))
    assert outcome.passed, outcome.checks
    assert outcome.score == 1.0


def test_occurrence_pair_checks_every_statistic():
    outcome = run_reproduction(get_reproduction("occurrences-234-432"))
    assert outcome.passed, outcome.checks
    assert {"joint_generating_function", "expectation", "variance", "correlation"} <= set(outcome.checks)
    assert outcome.metadata["moments"]["correlation"] == {"1,2": "71/147"}


def test_worked_example_checks_closed_forms():
    outcome = run_reproduction(get_reproduction("worked-example"))
    assert {"B_232", "B_233", "G_xt", "G", "generating_function"} == set(outcome.checks)


def test_wrong_expectation_fails_its_check():
    spec = ReproductionSpec(
        id="wrong-fibonacci",
        description="off by one in the last term",
        kind="avoidance",
        patterns="3",
        series=[1, 1, 2, 3, 5, 9],
        rate="1.61803398874989",
    )
    outcome = ReproductionRunner(spec).run()
    assert not outcome.passed
    assert outcome.checks == {"series": False, "lambda": True}
    assert outcome.score == 0.5
    assert outcome.metadata["series"] == ["1", "1", "2", "3", "5", "8"]


def test_outcome_without_checks_does_not_pass():
    outcome = ReproductionOutcome(checks={})
    assert not outcome.passed
    assert outcome.score == 0.0


@pytest.mark.slow
def test_single_pattern_ranking():
    spec = get_reproduction("single-pattern-ranking")
    assert spec.slow
    outcome = run_reproduction(spec, workers=4)
    assert outcome.passed, [name for name, ok in outcome.checks.items() if not ok]
    assert len(outcome.checks) == len(spec.ranking)
