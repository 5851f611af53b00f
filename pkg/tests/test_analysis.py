import threading
from fractions import Fraction

import pytest

from composition_clusters.analysis import (
    GrowthError,
    LinearForm,
    MomentFitError,
    bivariate_normal_moment,
    growth,
    growth_of,
    moments,
    normality_check,
    rank_patterns,
    reversal_representatives,
    series,
)
from composition_clusters.analysis import ranking
from composition_clusters.analysis.moments import FactorialMoments, unit
from composition_clusters.analysis.normality import central_moments
from composition_clusters.compositions import Composition, PatternSet, oracle_joint_counts, parse_patterns
from composition_clusters.polyrat import RationalFunction, parse_polynomial
from composition_clusters.runner import get_reproduction


def rf(num: str, den: str = "1") -> RationalFunction:
    return RationalFunction.new(parse_polynomial(num, ("x",)), parse_polynomial(den, ("x",)))


# ===== growth =====


def test_series_of_fibonacci_avoiders():
    assert series(parse_patterns("3"), 10).as_integers() == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_growth_of_fibonacci():
    estimate = growth(parse_patterns("3"), digits=12)
    assert estimate.rate == "1.61803398875"
    assert float(estimate.amplitude) == pytest.approx(0.723606797749979, abs=1e-11)
    assert estimate.dominant is True
    assert not estimate.subexponential
    assert Fraction(618033988749894, 10**15) < estimate.x0.lo <= estimate.x0.hi < Fraction(618033988749895, 10**15)


@pytest.mark.parametrize("reproduction_id", ["avoid-34543", "avoid-252-343-424", "occurrences-234-432"])
def test_growth_matches_published_constants(reproduction_id):
    spec = get_reproduction(reproduction_id)
    estimate = growth(parse_patterns(spec.patterns), digits=15)
    assert float(estimate.rate) == pytest.approx(float(spec.rate), abs=1e-9)
    assert float(estimate.amplitude) == pytest.approx(float(spec.amplitude), abs=1e-9)
    assert estimate.dominant is True


@pytest.mark.parametrize("reproduction_id", ["avoid-34543", "avoid-252-343-424"])
def test_successive_ratio_approaches_rate(reproduction_id):
    estimate = growth(parse_patterns(get_reproduction(reproduction_id).patterns), digits=15)
    assert estimate.check_index == 2000
    assert float(estimate.ratio_at_check) == pytest.approx(float(estimate.rate), abs=1e-8)


def test_growth_is_subexponential_when_denominator_vanishes_at_one():
    # avoiding 12 leaves (k, 1, ..., 1): n compositions of n
    A = parse_patterns("1,2")
    assert series(A, 6).as_integers() == [1, 1, 2, 3, 4, 5, 6]
    estimate = growth(A)
    assert estimate.subexponential
    assert estimate.rate == "1"
    assert estimate.amplitude is None


def test_growth_reports_missing_singularity():
    with pytest.raises(GrowthError):
        growth_of(rf("1", "1 + x^2"))
    with pytest.raises(GrowthError):
        growth_of(rf("1", "1 - 2*x"), digits=0)


def test_growth_estimate_json_uses_strings():
    payload = growth(parse_patterns("3")).to_dict()
    assert payload["digits"] == "12"
    assert payload["check_index"] == "2000"
    assert isinstance(payload["x0"]["lo"], str)


# ===== moments =====


def test_linear_form_rendering():
    assert str(LinearForm(Fraction(1, 128), Fraction(-9, 128))) == "1/128*n - 9/128"
    assert str(LinearForm(Fraction(1), Fraction(1, 2))) == "n + 1/2"
    assert str(LinearForm(Fraction(0), Fraction(3))) == "3"
    assert LinearForm(Fraction(1, 2), Fraction(1, 2))(5) == 3


def test_moments_of_part_count():
    # every part is an occurrence of 1: N = 1 + Binomial(n - 1, 1/2)
    report = moments(parse_patterns("1"))
    assert report.expectation == (LinearForm(Fraction(1, 2), Fraction(1, 2)),)
    assert report.variance == (LinearForm(Fraction(1, 4), Fraction(-1, 4)),)
    assert report.covariance == {}


def test_moments_of_published_pair(mirror_pair):
    report = moments(mirror_pair)
    assert [str(form) for form in report.expectation] == ["1/128*n - 9/128"] * 2
    assert [str(form) for form in report.variance] == ["147/16384*n - 1439/16384"] * 2
    assert report.correlation[(0, 1)] == Fraction(71, 147)
    payload = report.to_dict()
    assert payload["correlation"] == {"1,2": "71/147"}
    assert "corr[N1,N2] -> 71/147" in report.render()


def test_factorial_moments_are_exact(mirror_pair, mirror_pair_joint):
    factorial = FactorialMoments(mirror_pair, 2, joint=mirror_pair_joint)
    for n in (9, 10, 12):
        counts = oracle_joint_counts(n, mirror_pair)
        total = sum(count * v[0] for v, count in counts.items())
        assert factorial.exact(unit(2, 0), n) == Fraction(total, 2 ** (n - 1))
    # the pole at 1 leaves a 2^(1-n) correction on top of the linear part
    expectation = LinearForm(Fraction(1, 128), Fraction(-9, 128))
    n = factorial.window.start
    assert factorial.exact(unit(2, 0), n) - expectation(n) == Fraction(1, 2 ** (n - 1))
    assert factorial.exact((0, 0), 7) == 1


def test_moment_errors():
    with pytest.raises(MomentFitError):
        moments(PatternSet(()))
    with pytest.raises(MomentFitError):
        moments(parse_patterns("1"), order=1)
    with pytest.raises(MomentFitError, match="at least"):
        moments(parse_patterns("1"), window=range(4, 8))


# ===== normality =====


def test_bivariate_normal_moments():
    rho = Fraction(1, 3)
    assert bivariate_normal_moment(0, 0, rho) == 1
    assert bivariate_normal_moment(2, 0, rho) == 1
    assert bivariate_normal_moment(1, 1, rho) == rho
    assert bivariate_normal_moment(4, 0, rho) == 3
    assert bivariate_normal_moment(2, 2, rho) == 1 + 2 * rho**2
    assert bivariate_normal_moment(3, 0, rho) == 0
    assert bivariate_normal_moment(1, 2, rho) == 0


def test_central_moments_match_oracle():
    # N1 counts every part, N2 the parts of size at least 2
    A = parse_patterns("1;2")
    n = 8
    table = central_moments(FactorialMoments(A, 4), 0, 1, 4, n)
    counts = oracle_joint_counts(n, A)
    total = 2 ** (n - 1)
    mu = [Fraction(sum(count * v[k] for v, count in counts.items()), total) for k in (0, 1)]
    for (p, q), value in table.items():
        expected = Fraction(
            sum(count * (v[0] - mu[0]) ** p * (v[1] - mu[1]) ** q for v, count in counts.items()), total
        )
        assert value == expected, (p, q)
    assert table[(0, 0)] == 1
    assert table[(1, 0)] == table[(0, 1)] == 0


def test_normality_check_rejects_bad_pairs(mirror_pair):
    with pytest.raises(MomentFitError):
        normality_check(mirror_pair, 0, 0, 4)
    with pytest.raises(MomentFitError):
        normality_check(mirror_pair, 0, 2, 4)


@pytest.mark.slow
def test_normality_table_converges(mirror_pair):
    report = normality_check(mirror_pair, 0, 1, 4, ladder=(100, 200, 400), rho=Fraction(71, 147))
    assert report.rho == "71/147"
    assert all(float(value) == pytest.approx(1.0) for value in report.row(2, 0).values)
    assert report.row(1, 1).converging
    assert report.row(4, 0).converging
    assert report.to_dict()["ladder"] == ["100", "200", "400"]


# ===== ranking =====


def test_reversal_representatives():
    classes = reversal_representatives(3)
    assert classes == [
        (Composition((2,)), None),
        (Composition((1, 1)), None),
        (Composition((3,)), None),
        (Composition((1, 2)), Composition((2, 1))),
        (Composition((1, 1, 1)), None),
    ]


def test_rank_table_orders_each_group():
    table = rank_patterns(max_sum=4, digits=10, workers=2)
    assert [row.pattern.label for row in table.groups[2]] == ["11", "2"]
    assert [row.pattern.label for row in table.groups[3]] == ["111", "12", "3"]
    assert table.groups[3][2].rate == "1.618033989"
    row = table.find("21")
    assert row is not None and row.pattern.label == "12" and row.twin.label == "21"
    assert table.find("5") is None
    assert all(row.error is None for row in table.rows())
    assert table.to_dict()["groups"]["3"][1]["twin"] == "21"
    assert table.render().startswith("n=2: 11 (1)")


def test_rank_rejects_bad_arguments():
    with pytest.raises(ValueError):
        rank_patterns(max_sum=1)
    with pytest.raises(ValueError):
        rank_patterns(max_sum=3, workers=0)


def test_rank_keeps_rows_when_a_worker_raises(monkeypatch):
    real_growth_of = ranking.growth_of

    def flaky_growth_of(F, digits):
        if F.univariate("x").den.degree() == 2:
            raise ValueError("no convergence")
        return real_growth_of(F, digits)

    monkeypatch.setattr(ranking, "growth_of", flaky_growth_of)
    outcome = []
    worker = threading.Thread(
        target=lambda: outcome.append(rank_patterns(max_sum=3, digits=10, workers=1)), daemon=True
    )
    worker.start()
    worker.join(60)
    assert not worker.is_alive()
    (table,) = outcome
    assert len(table.rows()) == len(reversal_representatives(3))
    failed = [row for row in table.rows() if row.error is not None]
    assert failed
    assert all(row.error == "ValueError: no convergence" and row.estimate is None for row in failed)
    # failed rows sort after the ranked ones of their group
    for rows in table.groups.values():
        errors = [row.error is not None for row in rows]
        assert errors == sorted(errors)
