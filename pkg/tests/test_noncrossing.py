import pytest
from hypothesis import given, settings, strategies as st

from rdsemi.cumulants import catalan
from rdsemi.errors import DomainError, ResourceLimitError
from rdsemi.noncrossing import (
    SetPartition,
    count_nc2,
    count_nc_alternating,
    enumerate_nc,
    enumerate_nc2,
    enumerate_nc_alternating,
    is_noncrossing,
    is_pairing,
    leq,
    moebius,
    pairs_level_matched,
    parse_partition,
)
from rdsemi.strings import StarString, all_balanced, parse_string

FIG1 = parse_string("1^3 *^2 1 *^2")


def words(max_len=12):
    return st.lists(st.sampled_from("1*"), max_size=max_len).map(StarString.from_symbols)


def test_nc_counts_are_catalan():
    assert [len(enumerate_nc(n)) for n in range(8)] == [catalan(n) for n in range(8)]


def test_nc_enumeration_is_noncrossing_and_distinct():
    parts = enumerate_nc(6)
    assert len(set(parts)) == len(parts)
    assert all(is_noncrossing(p) for p in parts)


def test_crossing_detected():
    assert not is_noncrossing(parse_partition("{1,3}{2,4}"))
    assert is_noncrossing(parse_partition("{1,4}{2,3}"))


def test_partition_text_roundtrip():
    p = parse_partition("{2,3}{1,4}")
    assert str(p) == "{1,4}{2,3}"
    assert parse_partition(str(p)) == p


def test_moebius_bottom_top():
    vals = [moebius(SetPartition.singletons(n), SetPartition.one_block(n)) for n in range(1, 7)]
    assert vals == [1, -1, 2, -5, 14, -42]


def test_moebius_requires_order():
    with pytest.raises(DomainError):
        moebius(parse_partition("{1,2}{3}"), parse_partition("{1}{2,3}"))


def test_moebius_inverts_zeta():
    parts = enumerate_nc(4)
    bottom = SetPartition.singletons(4)
    for p in parts:
        total = sum(moebius(bottom, t) for t in parts if leq(bottom, t) and leq(t, p))
        assert total == (1 if p == bottom else 0)


def test_guards():
    with pytest.raises(ResourceLimitError):
        enumerate_nc(13)
    with pytest.raises(ResourceLimitError):
        enumerate_nc_alternating(StarString.regular(13, 1))


def test_figure_one():
    nc = enumerate_nc_alternating(FIG1)
    nc2 = enumerate_nc2(FIG1)
    assert len(nc) == 3 and len(nc2) == 2
    assert all(is_pairing(p) for p in nc2)
    assert count_nc2(FIG1) == 2 and count_nc_alternating(FIG1) == 3


@settings(max_examples=150)
@given(words())
def test_dp_counts_match_enumeration(s):
    assert count_nc2(s) == len(enumerate_nc2(s))
    assert count_nc_alternating(s) == len(enumerate_nc_alternating(s))


@settings(max_examples=100)
@given(words(10))
def test_pairings_are_level_matched(s):
    assert all(pairs_level_matched(s, p) for p in enumerate_nc2(s))


def test_unbalanced_has_none():
    s = parse_string("1^2 *")
    assert count_nc2(s) == 0 and enumerate_nc_alternating(s) == []


def test_nc2_is_subset_of_nc():
    for s in all_balanced(8):
        assert set(enumerate_nc2(s)) <= set(enumerate_nc_alternating(s))
