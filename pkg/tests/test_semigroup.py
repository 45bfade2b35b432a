import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rdsemi import _poly as P
from rdsemi.cumulants import CumulantSpec, even_moments, from_even_measure, mixed_moment
from rdsemi.errors import DomainError, StringParseError
from rdsemi.mehler import DiscreteMeasure
from rdsemi.semigroup import (
    GeneratorWord,
    format_word,
    format_xs,
    from_xs,
    generic_Dt,
    markov_Tt,
    parse_word,
    poisson_eval,
    poisson_fourier,
    to_xs,
    word_list,
    xs_moment,
    xs_roundtrip,
)

SEMI = even_moments(CumulantSpec.circular(12), 24)
THREE = DiscreteMeasure.three_point(Fraction(1, 8), 2)  # m2 = 1, m4 = 4
MEASURES = {1: THREE, 2: SEMI}

letters = st.tuples(st.integers(1, 3), st.sampled_from([1, -1]))


def terms(comb):
    return {format_word(w): c for c, w in comb.terms}


def test_word_text_roundtrip():
    w = parse_word("a1* a1 a1* a2 a2 a1*")
    assert format_word(w) == "a1* a1 a1* a2 a2 a1*"
    assert parse_word("1") == GeneratorWord()
    with pytest.raises(StringParseError):
        parse_word("a1 b2")


def test_xs_examples():
    assert format_xs(to_xs(parse_word("a1* a1 a1* a2 a2 a1*"))) == "x1^3 x2 s x2 x1 s"
    assert format_xs(to_xs(parse_word("a1* a2 a2 a1*"))) == "x1 x2 s x2 x1 s"
    assert format_xs(to_xs(parse_word("a1"))) == "s x1"


def test_from_xs_rejects_odd():
    assert from_xs(("s",)) is None
    assert from_xs(((1, 1),)) is None
    assert from_xs(((1, 3),)) is None


@given(st.lists(letters, max_size=8))
def test_xs_roundtrip(ls):
    w = GeneratorWord(tuple(ls))
    assert xs_roundtrip(w) == w


def test_generic_examples():
    assert terms(generic_Dt(parse_word("a1 a2 a1"))) == {"a1 a2 a1": P.monomial(3)}
    assert terms(generic_Dt(parse_word("a1 a1*"))) == {"a1 a1*": P.ONE}
    assert terms(generic_Dt(parse_word("a1 a2* a1"))) == {"a1 a2* a1": P.monomial(1)}


def test_markov_golden():
    w = parse_word("a1* a1 a1* a2 a2 a1*")
    alpha31 = Fraction(4)  # m4 / m2 of the first measure
    got = terms(markov_Tt(w, MEASURES))
    assert got == {
        "a1* a1 a1* a2 a2 a1*": P.monomial(6),
        "a1* a2 a2 a1*": P.sub(P.monomial(4, alpha31), P.monomial(6, alpha31)),
    }


def test_markov_semicircle_pair():
    got = terms(markov_Tt(parse_word("a1 a1*"), {1: SEMI}))
    assert got == {"a1 a1*": P.monomial(2), "1": P.sub(P.ONE, P.monomial(2))}


def test_markov_star_free_matches_generic():
    for L in range(1, 5):
        for w in word_list(L, 2):
            if all(e > 0 for _, e in w.letters):
                assert markov_Tt(w, MEASURES) == generic_Dt(w)


def test_markov_identity_at_one():
    for L in range(5):
        for w in word_list(L, 2):
            assert markov_Tt(w, MEASURES).at(1) == {w: 1}


def test_markov_semigroup_law():
    q1, q2 = Fraction(1, 2), Fraction(2, 3)
    for L in range(4):
        for w in word_list(L, 2):
            composed = {}
            for u, c in markov_Tt(w, MEASURES).at(q1).items():
                for v, d in markov_Tt(u, MEASURES).at(q2).items():
                    composed[v] = composed.get(v, 0) + c * d
            assert {k: v for k, v in composed.items() if v} == markov_Tt(w, MEASURES).at(q1 * q2)


def test_markov_trace_compatibility():
    specs = {1: from_even_measure(THREE.moments(12)), 2: from_even_measure(SEMI[:12])}
    for L in range(5):
        for w in word_list(L, 2):
            T = markov_Tt(w, MEASURES)
            direct = xs_moment(to_xs(w), MEASURES)
            for q in (Fraction(1, 3), Fraction(3, 4)):
                assert sum(c * mixed_moment(specs, u.letters) for u, c in T.at(q).items()) == direct


def test_markov_requires_normalised():
    with pytest.raises(DomainError):
        markov_Tt(parse_word("a1 a1*"), {1: DiscreteMeasure.two_point(2)})
    with pytest.raises(DomainError):
        markov_Tt(parse_word("a1 a1*"), {2: SEMI})


def test_combination_json():
    data = json.loads(markov_Tt(parse_word("a1 a1*"), {1: SEMI}).to_json())
    assert data == [{"coeff": {"monomials": {"2": "1"}}, "word": "a1 a1*"},
                    {"coeff": {"monomials": {"0": "1", "2": "-1"}}, "word": "1"}]


def test_poisson():
    for r in (0.1, 0.5, 0.9):
        assert poisson_eval(r, 0) == pytest.approx((1 + r) / (1 - r))
        assert min(poisson_eval(r, k * math.pi / 50) for k in range(100)) > 0
    assert abs(poisson_fourier(0.5, 3, 4096) - 0.125) < 1e-10
    with pytest.raises(DomainError):
        poisson_eval(1.0, 0.0)
