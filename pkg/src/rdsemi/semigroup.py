"""Word-level actions of the dilation semigroup extensions and Poisson-kernel numerics.

Generators are modelled as a_j = s x_j (adjoint x_j s) with s a symmetric
Bernoulli variable free from self-adjoint x_j.  Coefficients are polynomials
in q = e^{-t}, stored as low-degree-first Fraction tuples.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from rdsemi import _poly as P
from rdsemi._rational import fmt, to_fraction
from rdsemi.cumulants import catalan, moments_to_cumulants
from rdsemi.errors import DomainError, StringParseError
from rdsemi.mehler import DiscreteMeasure, PolySeq, gram_schmidt
from rdsemi.noncrossing import alternating_block_sum

S = "s"
_LETTER = re.compile(r"\s*a(\d+)(\*?)")


@dataclass(frozen=True)
class GeneratorWord:
    """a_{j_1}^{e_1} ... a_{j_n}^{e_n}; e = -1 marks the adjoint."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(j), int(e)) for j, e in self.letters)
        for j, e in letters:
            if j < 1 or e not in (1, -1):
                raise ValueError(f"bad letter ({j}, {e})")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.letters)


def parse_word(text: str) -> GeneratorWord:
    """``"a1* a1 a2"``; ``"1"`` or blank is the empty word."""
    if text.strip() in ("", "1"):
        return GeneratorWord()
    letters = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _LETTER.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise StringParseError(f"unexpected character {text[offset]!r}", offset)
        j = int(m.group(1))
        if j < 1:
            raise StringParseError("generator index must be >= 1", m.start(1))
        letters.append((j, -1 if m.group(2) else 1))
        pos = m.end()
    return GeneratorWord(tuple(letters))


def format_word(w: GeneratorWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"a{j}{'*' if e < 0 else ''}" for j, e in w.letters)


# ---------------------------------------------------------------- x/s words

def _normalize_xs(tokens) -> tuple:
    """Cancel s s, merge x_j^a x_j^b, drop x^0."""
    out: list = []
    for tok in tokens:
        if tok != S and tok[1] == 0:
            continue
        if out and tok == S and out[-1] == S:
            out.pop()
        elif out and tok != S and out[-1] != S and out[-1][0] == tok[0]:
            out[-1] = (tok[0], out[-1][1] + tok[1])
        else:
            out.append(tok)
    # a cancellation can expose new neighbours; repeat until stable
    out = tuple(out)
    return out if out == tuple(tokens) else _normalize_xs(out)


def to_xs(w: GeneratorWord) -> tuple:
    """XS word: tokens ``"s"`` or ``(j, k)`` for x_j^k, reduced."""
    tokens = []
    for j, e in w.letters:
        tokens.extend([S, (j, 1)] if e > 0 else [(j, 1), S])
    return _normalize_xs(tokens)


def format_xs(tokens) -> str:
    if not tokens:
        return "1"
    return " ".join(t if t == S else (f"x{t[0]}" if t[1] == 1 else f"x{t[0]}^{t[1]}")
                    for t in tokens)


def from_xs(tokens) -> GeneratorWord | None:
    """Left-to-right rewrite: s x_j -> a_j, x_j s -> a_j*, x_j x_k -> x_j s s x_k.

    Returns None when the monomial is not in the image of generator words.
    """
    flat = [t if t == S else t[0] for t in tokens for _ in range(1 if t == S else t[1])]
    letters = []
    pos = 0
    virtual_s = False
    while pos < len(flat):
        tok = flat[pos]
        if virtual_s:
            if tok == S:
                return None
            letters.append((tok, 1))
            virtual_s = False
            pos += 1
        elif tok == S:
            if pos + 1 >= len(flat) or flat[pos + 1] == S:
                return None
            letters.append((flat[pos + 1], 1))
            pos += 2
        elif pos + 1 < len(flat) and flat[pos + 1] == S:
            letters.append((tok, -1))
            pos += 2
        elif pos + 1 < len(flat):
            letters.append((tok, -1))
            virtual_s = True
            pos += 1
        else:
            return None
    if virtual_s:
        return None
    return GeneratorWord(tuple(letters))


def xs_roundtrip(w: GeneratorWord) -> GeneratorWord:
    back = from_xs(to_xs(w))
    assert back is not None
    return back


# ---------------------------------------------------------- combinations

@dataclass(frozen=True)
class WordCombination:
    """Formal sum of (q-polynomial coefficient, word); words distinct, coefficients nonzero."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, acc: Mapping) -> "WordCombination":
        items = [(P.trim(c), w) for w, c in acc.items()]
        items = [(c, w) for c, w in items if c]
        items.sort(key=lambda cw: (-len(cw[1]), cw[1].letters))
        return cls(tuple(items))

    def at(self, q) -> dict:
        """Numeric coefficients at a given q."""
        q = to_fraction(q)
        return {w: P.evaluate(c, q) for c, w in self.terms if P.evaluate(c, q)}

    def to_json(self) -> str:
        return json.dumps([{"coeff": {"monomials": {str(k): fmt(c) for k, c in enumerate(cf) if c}},
                            "word": format_word(w)} for cf, w in self.terms])

    def __str__(self):
        parts = []
        for cf, w in self.terms:
            poly = " + ".join(f"{fmt(c)}*q^{k}" for k, c in enumerate(cf) if c)
            parts.append(f"({poly}) {format_word(w)}")
        return " + ".join(parts) if parts else "0"


def generic_Dt(w: GeneratorWord) -> WordCombination:
    """q^{|e_1 + ... + e_n|} times the word."""
    return WordCombination(((P.monomial(abs(w.degree)), w),))


# ------------------------------------------------------ Markov extension

def _measure_polys(measure, K: int) -> tuple:
    """(moments m_1.., PolySeq) for a symmetric measure normalised to m_2 = 1."""
    if isinstance(measure, DiscreteMeasure):
        moments = measure.moments(2 * K + 2)
    else:
        moments = tuple(to_fraction(x) for x in measure)
    if len(moments) < 2 * max(K, 1):
        raise DomainError(f"need {2 * max(K, 1)} moments, got {len(moments)}")
    if any(moments[k] for k in range(0, len(moments), 2)):
        raise DomainError("measure must be symmetric (odd moments zero)")
    if moments[1] != 1:
        raise DomainError(f"measure must be normalised to m_2 = 1, got {fmt(moments[1])}")
    return moments, gram_schmidt(moments, K)


def _norm_tokens(tokens) -> list:
    """Reduce (s | (j, poly, centered)) tokens: cancel s s, multiply same-j neighbours."""
    out: list = []
    for tok in tokens:
        if out and tok == S and out[-1] == S:
            out.pop()
        elif out and tok != S and out[-1] != S and out[-1][0] == tok[0]:
            j, f, _ = out.pop()
            out.append((j, P.mul(f, tok[1]), False))
        else:
            out.append(tok)
    return out if out == list(tokens) else _norm_tokens(out)


def _centre(tokens, phi) -> list:
    """Write the product as a sum of scalar times alternating centred words."""
    tokens = _norm_tokens(tokens)
    for k, tok in enumerate(tokens):
        if tok != S and not tok[2]:
            j, f, _ = tok
            c = phi[j](f)
            g = P.sub(f, (c,))
            out = []
            if g:
                out += _centre(tokens[:k] + [(j, g, True)] + tokens[k + 1:], phi)
            if c:
                out += [(c * a, t) for a, t in _centre(tokens[:k] + tokens[k + 1:], phi)]
            return out
    return [(Fraction(1), tokens)]


def _functional(moments):
    m = (Fraction(1),) + tuple(moments)

    def L(f):
        if len(f) > len(m):
            raise DomainError(f"need moment m_{len(f) - 1}")
        return sum((c * m[k] for k, c in enumerate(f)), Fraction(0))
    return L


def _apply_multiplier(ps: PolySeq, g) -> dict:
    """M(q) g as {x-degree: q-polynomial}."""
    out: dict = {}
    for n, gn in enumerate(g):
        if not gn:
            continue
        for level, a in enumerate(ps.alpha[n]):
            if not a:
                continue
            for k, pk in enumerate(ps.polys[level]):
                if pk:
                    out[k] = P.add(out.get(k, P.ZERO), P.monomial(level, gn * a * pk))
    return out


def markov_Tt(w: GeneratorWord, measures: Mapping) -> WordCombination:
    """Free product of the Mehler multipliers M_{mu_j}(q) with the identity on s.

    ``measures`` maps generator index to a moment sequence m_1, m_2, ... or a
    DiscreteMeasure; each must be symmetric with m_2 = 1.
    """
    K = max(len(w), 1)
    phi, basis = {}, {}
    for j in sorted({j for j, _ in w.letters}):
        if j not in measures:
            raise DomainError(f"no measure for generator {j}")
        moments, ps = _measure_polys(measures[j], K)
        phi[j] = _functional(moments)
        basis[j] = ps
    tokens = [t if t == S else (t[0], P.monomial(t[1]), False) for t in to_xs(w)]
    acc: dict = {}
    for scalar, centred in _centre(tokens, phi):
        factors = [[(P.ONE, S)] if t == S
                   else [(c, (t[0], k)) for k, c in _apply_multiplier(basis[t[0]], t[1]).items()]
                   for t in centred]
        for combo in itertools.product(*factors):
            coeff = P.scale(P.ONE, scalar)
            for c, _ in combo:
                coeff = P.mul(coeff, c)
            if not coeff:
                continue
            word = from_xs(_normalize_xs([tok for _, tok in combo]))
            if word is None:
                raise AssertionError("T_t left the generator algebra")
            acc[word] = P.add(acc.get(word, P.ZERO), coeff)
    return WordCombination.from_dict(acc)


# ------------------------------------------------------- x/s moment model

def bernoulli_cumulants(N: int) -> tuple:
    """Free cumulants kappa_1..kappa_N of the symmetric +-1 variable."""
    return tuple(Fraction(0) if n % 2 else Fraction((-1) ** (n // 2 - 1) * catalan(n // 2 - 1))
                 for n in range(1, N + 1))


def xs_moment(tokens, measures: Mapping) -> Fraction:
    """phi of an x/s monomial with s, x_1, x_2, ... free; independent of the
    R-diagonal cumulant machinery."""
    flat = [t if t == S else t[0] for t in tokens for _ in range(1 if t == S else t[1])]
    N = max(len(flat), 2)
    kappa = {S: bernoulli_cumulants(N)}
    for j in {t for t in flat if t != S}:
        m = measures[j].moments(N) if isinstance(measures[j], DiscreteMeasure) else measures[j]
        kappa[j] = moments_to_cumulants([to_fraction(x) for x in m[:N]])
    return Fraction(alternating_block_sum(flat, lambda a, b: a == b,
                                          lambda first, size: kappa[first][size - 1]))


# ----------------------------------------------------------- Poisson kernel

def poisson_eval(r: float, theta: float) -> float:
    """(1 - r^2) / (1 - 2 r cos(theta) + r^2)."""
    if not 0 <= r < 1:
        raise DomainError(f"Poisson kernel needs 0 <= r < 1, got {r}")
    return (1 - r * r) / (1 - 2 * r * math.cos(theta) + r * r)


def poisson_fourier(r: float, k: int, quad_points: int = 4096) -> float:
    """k-th Fourier coefficient by the trapezoid rule (spectrally accurate here)."""
    if not 0 <= r < 1:
        raise DomainError(f"Poisson kernel needs 0 <= r < 1, got {r}")
    if quad_points < 1:
        raise DomainError("quad_points must be positive")
    h = 2 * math.pi / quad_points
    return math.fsum(poisson_eval(r, m * h) * math.cos(k * m * h)
                     for m in range(quad_points)) / quad_points


def word_list(length: int, generators: int) -> list:
    """All generator words of the given length, in lexicographic order."""
    letters = [(j, e) for j in range(1, generators + 1) for e in (1, -1)]
    return [GeneratorWord(t) for t in itertools.product(letters, repeat=length)]
