import pytest
from hypothesis import given
from hypothesis import strategies as st

from composition_clusters.compositions import (
    Composition,
    CompositionError,
    EnumerationGuardError,
    OccurrenceVector,
    PatternParseError,
    PatternSet,
    PatternSetError,
    PositionError,
    avoids,
    enumerate_compositions,
    includes,
    includes_at,
    occurrences,
    oracle_avoider_count,
    oracle_avoider_counts,
    oracle_joint_counts,
    parse_patterns,
)

compositions = st.lists(st.integers(min_value=1, max_value=5), max_size=8).map(lambda parts: Composition(tuple(parts)))


def test_parse_single_and_multiple_patterns():
    assert parse_patterns("3,4,5,4,3") == PatternSet.of([3, 4, 5, 4, 3])
    parsed = parse_patterns(" 2, 3,4 ; 4,3,2 ")
    assert parsed == PatternSet.of([2, 3, 4], [4, 3, 2])
    assert PatternSet.parse("2,3,4;4,3,2") == parsed
    assert str(parsed) == "2,3,4;4,3,2"
    assert parsed.common_length == 3
    assert parsed.marker_count == 2


def test_parse_multi_digit_parts():
    parsed = parse_patterns("10,2")
    assert parsed[0].parts == (10, 2)
    assert parsed[0].label == "10,2"


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0),
        ("2,,3", 2),
        ("2,3;", 4),
        ("2,a", 2),
        ("0,1", 0),
    ],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(PatternParseError) as info:
        parse_patterns(text)
    assert info.value.position == position
    assert isinstance(info.value, ValueError)


def test_pattern_set_validation():
    with pytest.raises(PatternSetError, match="share one length"):
        parse_patterns("1,2;1,2,3")
    with pytest.raises(PatternSetError, match="distinct"):
        parse_patterns("1,2;1,2")
    with pytest.raises(CompositionError):
        Composition((1, 0))


def test_empty_pattern_set_is_accepted():
    empty = PatternSet(())
    assert len(empty) == 0
    assert empty.common_length == 0
    assert avoids(Composition((1, 2, 3)), empty)


def test_includes_at_is_consecutive_domination():
    host = Composition((1, 3, 2, 4))
    pattern = Composition((2, 2))
    assert not includes_at(host, pattern, 1)
    assert includes_at(host, pattern, 2)
    assert includes_at(host, pattern, 3)
    assert includes(host, pattern)
    # a subsequence match that skips a part is not containment
    assert not includes(Composition((3, 1, 3)), Composition((3, 3)))


def test_includes_at_rejects_bad_offsets():
    host = Composition((1, 2))
    with pytest.raises(PositionError):
        includes_at(host, Composition((1,)), 3)
    with pytest.raises(PositionError):
        includes_at(host, Composition((1,)), 0)


def test_occurrences_count_every_start():
    A = parse_patterns("2,3,4;4,3,2")
    host = Composition((2, 3, 4, 3, 2, 3, 4))
    assert occurrences(host, A) == OccurrenceVector((2, 1))
    assert str(occurrences(host, A)) == "(2,1)"


def test_enumerate_compositions_counts_and_order():
    assert [c.parts for c in enumerate_compositions(3)] == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    assert [c.parts for c in enumerate_compositions(0)] == [()]
    assert sum(1 for _ in enumerate_compositions(10)) == 2**9


def test_enumeration_guard():
    with pytest.raises(EnumerationGuardError) as info:
        list(enumerate_compositions(12, guard=10))
    assert (info.value.n, info.value.guard) == (12, 10)
    with pytest.raises(EnumerationGuardError):
        oracle_avoider_counts(12, parse_patterns("3"), guard=10)


def test_oracle_small_cases():
    # only 4 and 1111 avoid both 12 and 21
    assert oracle_avoider_count(4, parse_patterns("1,2;2,1")) == 2
    # parts limited to 1 and 2
    assert oracle_avoider_counts(10, parse_patterns("3")) == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    # the empty set forbids nothing
    assert oracle_avoider_counts(6, PatternSet(())) == [1, 1, 2, 4, 8, 16, 32]


def test_oracle_joint_counts_partition_all_compositions():
    A = parse_patterns("2,3,4;4,3,2")
    joint = oracle_joint_counts(12, A)
    assert sum(joint.values()) == 2**11
    assert joint[OccurrenceVector((0, 0))] == oracle_avoider_count(12, A)


def test_below_minimal_sum_nothing_is_forbidden():
    A = parse_patterns("3,4,5,4,3")
    counts = oracle_avoider_counts(A.min_sum - 1, A)
    assert counts[1:] == [2 ** (n - 1) for n in range(1, A.min_sum)]


@given(compositions, compositions)
def test_containment_is_monotone_under_extension(host, suffix):
    pattern = Composition((1, 2))
    if includes(host, pattern):
        assert includes(Composition(host.parts + suffix.parts), pattern)


@given(compositions, st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3))
def test_containment_is_reversal_symmetric(host, parts):
    pattern = Composition(tuple(parts))
    assert includes(host, pattern) == includes(host.reversed(), pattern.reversed())


@given(compositions)
def test_dominating_host_keeps_occurrences(host):
    bigger = Composition(tuple(part + 1 for part in host.parts))
    A = parse_patterns("2,2")
    assert all(big >= small for big, small in zip(occurrences(bigger, A), occurrences(host, A)))


@given(compositions, st.lists(st.tuples(st.integers(1, 4), st.integers(0, 3)), min_size=1, max_size=3))
def test_containment_is_monotone_in_the_pattern(host, parts_and_cuts):
    pattern = Composition(tuple(part for part, _ in parts_and_cuts))
    weaker = Composition(tuple(max(1, part - cut) for part, cut in parts_and_cuts))
    assert pattern.dominates(weaker)
    if includes(host, pattern):
        assert includes(host, weaker)


def test_dominates_needs_equal_length():
    assert Composition((3, 2)).dominates(Composition((3, 1)))
    assert not Composition((3, 1)).dominates(Composition((3, 2)))
    assert not Composition((3, 2, 1)).dominates(Composition((1, 1)))
