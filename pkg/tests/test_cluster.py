from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from composition_clusters.cluster import (
    State,
    avoider_gf,
    brute_force_clusters,
    build_system,
    cluster_gf,
    enumerate_states,
    explain_system,
    joint_gf,
    merge_state,
)
from composition_clusters.compositions import (
    PatternSet,
    PositionError,
    oracle_avoider_counts,
    oracle_joint_counts,
    parse_patterns,
)
from composition_clusters.polyrat import PolyratError, RationalFunction, parse_polynomial, series_coefficients
from composition_clusters.polyrat.base import generator
from composition_clusters.runner import get_reproduction

WORKED = "2,3,2"
MIRROR_PAIR = "2,3,4;4,3,2"


def rf(num: str, den: str = "1", names=("x",)) -> RationalFunction:
    return RationalFunction.new(parse_polynomial(num, names), parse_polynomial(den, names))


@st.composite
def pattern_sets(draw, max_length=3, max_part=4, max_patterns=3):
    a = draw(st.integers(min_value=1, max_value=max_length))
    pattern = st.tuples(*[st.integers(min_value=1, max_value=max_part)] * a)
    patterns = draw(st.lists(pattern, min_size=1, max_size=max_patterns, unique=True))
    return PatternSet.of(*patterns)


# ===== states and the linear system =====


def test_worked_example_states_and_equations(worked_report):
    assert [state.label for state in worked_report.states] == ["232", "233"]
    assert list(worked_report.equations) == [
        "B_232 = -x^7*t^3 - x^5*t^2*B_232 - x^5*t^2*B_233",
        "B_233 = -x^3*t*B_232 - x^3*t*B_233",
    ]


def test_worked_example_solution(worked_report):
    names = ("x", "t")
    assert worked_report.solutions[0] == rf("-(1 + t*x^3)*t^3*x^7", "1 + t*x^3 + t^2*x^5", names)
    assert worked_report.solutions[1] == rf("t^4*x^10", "1 + t*x^3 + t^2*x^5", names)
    assert worked_report.G_xt == rf("-t^3*x^7", "1 + t*x^3 + t^2*x^5", names)
    assert worked_report.G == rf("x^7", "(1 - 2*x + x^2 + x^3 - x^4 + x^5)*(x - 1)")
    assert worked_report.F == rf("1 - 2*x + x^2 + x^3 - x^4 + x^5", "1 - 3*x + 2*x^2 + x^3 - 2*x^4 + x^5 - x^6")
    rendered = worked_report.render()
    assert "states: 232, 233" in rendered
    assert "G(x,t) = " in rendered


def test_single_part_pattern_has_a_terminal_only_equation():
    report = explain_system(parse_patterns("5"))
    assert list(report.equations) == ["B_5 = -x^5*t"]
    assert report.F == rf("1", "1 - x - x^2 - x^3 - x^4")


def test_system_counts_transitions():
    system = build_system(parse_patterns(WORKED))
    # one group subset, two states, offsets 1 and 2
    assert system.transition_count == 4
    assert len(system) == 2


def test_merge_state_offsets():
    A = parse_patterns(WORKED)
    assert merge_state((0,), 2, State((2, 3, 2)), A) == (State((2, 3, 2)), 5)
    assert merge_state((0,), 1, State((2, 3, 2)), A) == (State((2, 3, 3)), 3)
    with pytest.raises(PositionError):
        merge_state((0,), 3, State((2, 3, 2)), A)
    with pytest.raises(PositionError):
        merge_state((0,), 0, State((2, 3, 2)), A)


def test_state_labels_with_large_parts():
    assert State((10, 2)).label == "10,2"
    assert str(State((1, 2))) == "12"


def test_empty_pattern_set():
    empty = PatternSet(())
    assert enumerate_states(empty) == []
    assert cluster_gf(empty).is_zero
    result = avoider_gf(empty)
    assert result.states_count == 0
    assert result.F == rf("1 - x", "1 - 2*x")
    with pytest.raises(PolyratError):
        explain_system(empty)


# ===== avoider generating functions =====


@pytest.mark.parametrize("reproduction_id", ["avoid-34543", "avoid-252-343-424"])
def test_published_avoiders(reproduction_id, single_avoider_result, triple_avoider_result):
    spec = get_reproduction(reproduction_id)
    result = single_avoider_result if reproduction_id == "avoid-34543" else triple_avoider_result
    assert series_coefficients(result.F, 30).as_integers() == spec.series
    assert result.F == rf(spec.numerator, spec.denominator)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_single_part_pattern_limits_part_size(k):
    # avoiding k keeps the parts 1..k-1
    expected = rf("1", "1" + "".join(f" - x^{i}" for i in range(1, k)))
    assert avoider_gf(parse_patterns(str(k))).F == expected


def test_avoider_gf_json_is_exact(single_avoider_result):
    payload = single_avoider_result.to_dict()
    assert payload["states"] == str(single_avoider_result.states_count)
    assert RationalFunction.from_json(payload["F"]) == single_avoider_result.F


@settings(max_examples=50)
@given(pattern_sets())
def test_avoider_series_matches_oracle(A):
    N = 16
    assert series_coefficients(avoider_gf(A).F, N).as_integers() == oracle_avoider_counts(N, A)


@given(pattern_sets())
def test_nothing_is_forbidden_below_the_minimal_sum(A):
    below = A.min_sum - 1
    terms = series_coefficients(avoider_gf(A).F, below).as_integers()
    assert terms == [1] + [2 ** (n - 1) for n in range(1, below + 1)]


@given(pattern_sets())
def test_reversal_invariance(A):
    assert avoider_gf(A).F == avoider_gf(A.reversed()).F


# ===== explicit clusters =====


@pytest.mark.parametrize("patterns, K", [(WORKED, 12), ("1,2;2,1", 9), ("2,2", 12), (MIRROR_PAIR, 14)])
def test_brute_force_clusters_match_system(patterns, K):
    A = parse_patterns(patterns)
    # every skyline column is at least the smallest part, which bounds the width
    max_width = K // min(min(p.parts) for p in A)
    states = set(enumerate_states(A))
    weights = Counter()
    for cluster in brute_force_clusters(A, max_width):
        assert cluster.state(A.common_length) in states
        if sum(cluster.skyline) <= K:
            weights[sum(cluster.skyline)] += cluster.sign
    g_at_one = explain_system(A).G_xt.specialize("t", 1)
    coefficients = series_coefficients(g_at_one, K)
    assert [coefficients[n] for n in range(K + 1)] == [weights[n] for n in range(K + 1)]


@given(pattern_sets(max_length=3, max_part=3, max_patterns=2))
def test_state_closure_matches_explicit_clusters(A):
    # only groups starting in the first a columns shape a cluster's state
    a = A.common_length
    explicit = {cluster.state(a) for cluster in brute_force_clusters(A, 2 * a - 1)}
    assert explicit == set(enumerate_states(A))


def test_brute_force_respects_width():
    A = parse_patterns(WORKED)
    assert list(brute_force_clusters(A, 2)) == []
    assert {cluster.width for cluster in brute_force_clusters(A, 5)} == {3, 4, 5}


# ===== joint generating functions =====


def test_joint_gf_marker_specializations(mirror_pair, mirror_pair_joint):
    everything = mirror_pair_joint.specialize("X1", 1).specialize("X2", 1)
    assert everything == rf("1 - x", "1 - 2*x")
    avoiding = mirror_pair_joint.specialize("X1", 0).specialize("X2", 0)
    assert avoiding == avoider_gf(mirror_pair).F


def test_joint_gf_matches_published(mirror_pair_joint):
    numerator, denominator = get_reproduction("occurrences-234-432").joint
    assert mirror_pair_joint == rf(numerator, denominator, ("x", "X1", "X2"))


def x_series(f: RationalFunction, N: int) -> list:
    """Coefficients of x^0..x^N of f, each a polynomial in the marker variables."""
    ring = f.ring
    position = f.variables.index("x")

    def by_degree(p):
        grouped = {}
        for monom, coeff in p.iterterms():
            rest = monom[:position] + (0,) + monom[position + 1 :]
            grouped[monom[position]] = grouped.get(monom[position], ring.zero) + ring({rest: coeff})
        return grouped

    num, den = by_degree(f.num), by_degree(f.den)
    out = []
    for n in range(N + 1):
        acc = num.get(n, ring.zero)
        for k in range(1, n + 1):
            if k in den:
                acc -= den[k] * out[n - k]
        quotient, remainder = acc.div(den[0])
        assert not remainder
        out.append(quotient)
    return out


def test_joint_gf_matches_oracle(mirror_pair, mirror_pair_joint):
    N = 14
    ring = mirror_pair_joint.ring
    X1, X2 = generator(ring, "X1"), generator(ring, "X2")
    coefficients = x_series(mirror_pair_joint, N)
    for n in range(N + 1):
        expected = ring.zero
        for vector, count in oracle_joint_counts(n, mirror_pair).items():
            expected += count * X1 ** vector[0] * X2 ** vector[1]
        assert coefficients[n] == expected


def test_joint_gf_of_single_pattern_marks_occurrences():
    A = parse_patterns("1,1")
    # X1 = 2 weights each composition by 2^(adjacent pairs)
    weighted = joint_gf(A).specialize("X1", 2)
    coefficients = series_coefficients(weighted, 8)
    for n in range(9):
        counts = oracle_joint_counts(n, A)
        assert coefficients[n] == sum(count * 2 ** v[0] for v, count in counts.items())
