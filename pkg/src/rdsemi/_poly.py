"""Dense univariate polynomials over Fraction, stored low degree first.

The zero polynomial is the empty tuple.
"""

from fractions import Fraction
from itertools import zip_longest

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def add(p, q) -> Poly:
    return trim(a + b for a, b in zip_longest(p, q, fillvalue=Fraction(0)))


def sub(p, q) -> Poly:
    return trim(a - b for a, b in zip_longest(p, q, fillvalue=Fraction(0)))


def scale(p, c) -> Poly:
    return trim(c * a for a in p)


def mul(p, q) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def shift(p, k=1) -> Poly:
    """Multiply by x**k."""
    return trim((Fraction(0),) * k + tuple(p)) if p else ZERO


def monomial(k, c=1) -> Poly:
    return trim((Fraction(0),) * k + (Fraction(c),))


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def degree(p) -> int:
    return len(p) - 1
