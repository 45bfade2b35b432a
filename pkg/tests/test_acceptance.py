"""Acceptance suite: one PASS/FAIL line per criterion.

Run with pytest, or directly as ``python tests/test_acceptance.py``.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from rdsemi import _poly as P
from rdsemi._parallel import pmap
from rdsemi.bounds import fuss_catalan, two_run_counts, verify_bounds
from rdsemi.cumulants import (
    CumulantSpec,
    catalan,
    cumulants_to_moments,
    even_moments,
    haar_unitary_printed_sign,
    moments_to_cumulants,
    moments_to_cumulants_moebius,
    rdiag_moment,
)
from rdsemi.mehler import (
    DiscreteMeasure,
    gram_matrix,
    markov_check,
    mehler_eval,
    moments_from_jacobi,
    q_factorial,
    q_hermite,
)
from rdsemi.noncrossing import (
    count_nc2,
    count_nc_alternating,
    enumerate_nc2,
    enumerate_nc_alternating,
)
from rdsemi.normlab import (
    ScanConfig,
    log_grid,
    psi_4norm4_circular,
    psi_norm2_sq,
    psi_pnorm_bruteforce,
    sum_exp_slope,
    truncation,
    ultracontractive_scan,
)
from rdsemi.semigroup import (
    format_word,
    generic_Dt,
    markov_Tt,
    parse_word,
    poisson_fourier,
    word_list,
    xs_roundtrip,
)
from rdsemi.strings import (
    StarString,
    all_balanced,
    compositions,
    num_runs,
    parse_string,
    string_from_blocks,
)

GRID = log_grid(0.005, 0.05, 10)


def criterion_1():
    t0 = time.perf_counter()
    bad = [(n, r) for n in range(1, 9) for r in range(1, 9) if n * r <= 8
           and count_nc2(StarString.regular(n, r)) != fuss_catalan(n, r)]
    elapsed = time.perf_counter() - t0
    return not bad and elapsed < 60, f"mismatches={bad} time={elapsed:.2f}s"


def criterion_2():
    s = parse_string("1^3 *^2 1 *^2")
    nc, nc2 = len(enumerate_nc_alternating(s)), len(enumerate_nc2(s))
    return (nc, nc2) == (3, 2), f"|NC|={nc} |NC2|={nc2}"


def _two_run_ok(s):
    return two_run_counts(s) == (count_nc2(s), count_nc_alternating(s))


def criterion_3():
    strings = [s for L in range(2, 17, 2) for s in all_balanced(L) if num_runs(s) == 2]
    ok = pmap(_two_run_ok, strings)
    return all(ok), f"{len(strings)} two-run strings, {ok.count(False)} failures"


def criterion_4():
    reports = verify_bounds(14)
    failed = [r.string for r in reports if not r.passed]
    return not failed, f"{len(reports)} strings, failures={failed[:5]}"


def criterion_5():
    rng = random.Random(20240611)

    def rand_seq(n):
        return [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]

    trips = all(cumulants_to_moments(moments_to_cumulants(m)) == tuple(m)
                for m in (rand_seq(8) for _ in range(100)))
    moeb = all(moments_to_cumulants_moebius(m) == moments_to_cumulants(m)
               for m in (rand_seq(6) for _ in range(5)))
    return trips and moeb, f"round trip={trips} moebius agrees={moeb}"


_CIRC = CumulantSpec.circular(8)


def _circ_ok(s):
    return rdiag_moment(_CIRC, s) == count_nc2(s)


def criterion_6():
    strings = [s for L in range(2, 15, 2) for s in all_balanced(L)]
    ok = all(pmap(_circ_ok, strings))
    cat = all(rdiag_moment(_CIRC, StarString.from_symbols("1*" * n)) == catalan(n) for n in range(1, 8))
    return ok and cat, f"{len(strings)} strings match={ok} catalan={cat}"


def criterion_7():
    u = CumulantSpec.haar_unitary(8)
    good = all(rdiag_moment(u, StarString.from_symbols("1*" * k)) == 1 for k in range(1, 7))
    printed = rdiag_moment(haar_unitary_printed_sign(8), StarString.from_symbols("1*1*"))
    return good and printed != 1, f"unitary={good} printed-sign k=2 gives {printed}"


def criterion_8():
    grid = [Fraction(k, 10) for k in range(1, 10)]
    two = all(row.min_value == 1 - row.r for row in markov_check(DiscreteMeasure.two_point(), grid))
    a = Fraction(1, 10)
    value = mehler_eval(DiscreteMeasure.three_point(a), Fraction(1, 2), 1, -1)
    rows = markov_check(DiscreteMeasure.three_point(a), grid)
    threshold = all(row.markovian == (row.r <= Fraction(1, 4)) for row in rows)
    others = all(row.markovian for b in (Fraction(1, 4), Fraction(3, 10))
                 for row in markov_check(DiscreteMeasure.three_point(b), grid))
    ok = two and value == Fraction(-1, 2) and threshold and others
    return ok, f"two-point={two} m(1/2;1,-1)={value} threshold={threshold} a>=1/4 markovian={others}"


def criterion_9():
    diag = True
    for q in (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)):
        ps, b = q_hermite(6, q)
        g = gram_matrix(ps.polys, moments_from_jacobi(b, 12))
        diag &= all(g[i][j] == (q_factorial(i, q) if i == j else 0)
                    for i in range(7) for j in range(7))
    _, b0 = q_hermite(6, 0)
    _, b1 = q_hermite(6, 1)
    cat = moments_from_jacobi(b0, 12)[1::2] == tuple(catalan(n) for n in range(1, 7))
    dfac = moments_from_jacobi(b1, 12)[1::2] == tuple(math.prod(range(1, 2 * n, 2)) for n in range(1, 7))
    return diag and cat and dfac, f"gram={diag} q=0 catalan={cat} q=1 double factorial={dfac}"


def criterion_10():
    three = DiscreteMeasure.three_point(Fraction(1, 8), 2)
    semi = even_moments(CumulantSpec.circular(12), 24)
    measures = {1: three, 2: semi}
    m = three.moments(4)
    alpha = m[3] / m[1]
    got = {format_word(w): c for c, w in markov_Tt(parse_word("a1* a1 a1* a2 a2 a1*"), measures).terms}
    golden = got == {"a1* a1 a1* a2 a2 a1*": P.monomial(6),
                     "a1* a2 a2 a1*": P.sub(P.monomial(4, alpha), P.monomial(6, alpha))}
    identity = all(markov_Tt(w, measures).at(1) == {w: 1} for L in range(5) for w in word_list(L, 2))
    star_free = all(markov_Tt(w, measures) == generic_Dt(w)
                    for L in range(1, 7) for w in word_list(L, 2) if all(e > 0 for _, e in w.letters))
    roundtrip = all(xs_roundtrip(w) == w for L in range(9) for w in word_list(L, 3))
    ok = golden and identity and star_free and roundtrip
    return ok, f"golden={golden} identity={identity} star-free={star_free} roundtrip={roundtrip}"


def criterion_11():
    err = max(abs(poisson_fourier(r, k, 4096) - r ** abs(k))
              for r in (0.3, 0.5, 0.9) for k in range(-5, 6))
    return err < 1e-10, f"max error={err:.2e}"


def criterion_12():
    t0 = time.perf_counter()
    lines, ok = [], True
    for q in (1, 2, 3):
        fit = sum_exp_slope(q, GRID)
        ok &= fit.passed
        lines.append(f"sum_exp q={q} slope={fit.slope:.4f}")
    err = max(abs(psi_norm2_sq(t, truncation(t)) - 1 / (1 - math.exp(-2 * t))) for t in GRID)
    ok &= err < 1e-12
    lines.append(f"norm2 abs err={err:.1e}")
    for model, keys in (("circular", ("A", "R_p", "R_inf")), ("haar", ("A", "R_inf"))):
        fits = ultracontractive_scan(ScanConfig(tuple(GRID), model=model)).fits
        for key in keys:
            f = fits[key]
            ok &= f.passed
            lines.append(f"{model} {key} slope={f.slope:.3f} target={f.target}"
                         f"{'' if f.passed else ' MISS'}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    return ok, "; ".join(lines) + f"; time={elapsed:.1f}s"


def criterion_13():
    c = CumulantSpec.circular(16)
    q = Fraction(1, 2)
    exact = psi_pnorm_bruteforce(q, 6, 2, c)
    diff = abs(float(exact) - psi_4norm4_circular(math.log(2) / 2, 6, 1.0))
    oracle = sum(q ** (2 * n) * sum(count_nc2(string_from_blocks(a, b))
                                    for a in compositions(n, 3, 0) for b in compositions(n, 3, 0))
                 for n in range(6))
    r3 = psi_pnorm_bruteforce(q, 5, 3, c) == oracle
    return diff < 1e-12 and r3, f"r=2 |exact-float|={diff:.1e} r=3 exact={r3}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12,
            criterion_13]


def report(k, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + report(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    for k, fn in enumerate(CRITERIA, 1):
        print(report(k, *fn()), flush=True)
