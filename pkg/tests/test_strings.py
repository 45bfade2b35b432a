import pytest
from hypothesis import given, strategies as st

from rdsemi.errors import DomainError, StringParseError
from rdsemi.strings import (
    StarString,
    all_balanced,
    compositions,
    enumerate_strings,
    format_string,
    is_balanced,
    lattice_path,
    min_block_size,
    num_runs,
    parse_string,
    path_height,
    rotate,
    rotate_min_first,
    swap_symbols,
)

symbols = st.lists(st.sampled_from("1*"), max_size=20)


def balanced_words(max_half=8):
    return st.integers(1, max_half).flatmap(
        lambda n: st.permutations(["1"] * n + ["*"] * n))


def test_parse_run_notation():
    s = parse_string("1^3 *^2 1 *^2")
    assert s.runs == (("1", 3), ("*", 2), ("1", 1), ("*", 2))
    assert len(s) == 8 and is_balanced(s)


def test_parse_merges_adjacent_runs():
    assert parse_string("1 1 *^2").runs == (("1", 2), ("*", 2))
    assert parse_string("11**") == parse_string("1^2 *^2")


def test_parse_zero_run_reports_offset():
    with pytest.raises(StringParseError) as exc:
        parse_string("1^0")
    assert exc.value.offset == 2


def test_parse_bad_character():
    with pytest.raises(StringParseError) as exc:
        parse_string("1 x")
    assert exc.value.offset == 2


@given(symbols)
def test_format_parse_roundtrip(sym):
    s = StarString.from_symbols(sym)
    assert parse_string(format_string(s)) == s


def test_num_runs_is_cyclic():
    assert num_runs(parse_string("1 *^2 1^2 *")) == 2
    assert num_runs(parse_string("* 1 * 1")) == 2
    assert num_runs(StarString.regular(2, 3)) == 3


def test_min_block_cyclic():
    # the trailing 1 joins the leading 1 cyclically
    assert min_block_size(parse_string("1 *^3 1^3 *^3 1^2")) == 3
    with pytest.raises(DomainError):
        min_block_size(StarString())


@given(balanced_words())
def test_height_is_rotation_invariant(sym):
    s = StarString.from_symbols(sym)
    hs = {path_height(rotate(s, k)) for k in range(len(s))}
    assert len(hs) == 1


@given(balanced_words())
def test_rotate_min_first(sym):
    s = StarString.from_symbols(sym)
    t = rotate_min_first(s)
    assert t.runs[0] == ("1", min_block_size(s))
    assert path_height(t) <= len(s) // 2


def test_swap_symbols_involution():
    s = parse_string("1^3 *^2 1 *^2")
    assert swap_symbols(swap_symbols(s)) == s


def test_lattice_path_heights():
    assert lattice_path(parse_string("1^2 * 1 *^2")).heights == (0, 1, 2, 1, 2, 1, 0)


def test_compositions_and_families():
    assert list(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]
    assert len(list(compositions(3, 2, minimum=0))) == 4
    assert len(enumerate_strings(4, 2)) == 9
    assert all(min_block_size(s) == 1 for s in enumerate_strings(4, 2, 1))


def test_all_balanced_counts():
    from math import comb
    assert [sum(1 for _ in all_balanced(L)) for L in (2, 4, 6)] == [comb(2, 1), comb(4, 2), comb(6, 3)]
