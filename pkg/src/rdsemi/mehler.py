"""Orthogonal polynomials of symmetric measures, Mehler kernels and the
multiplier operator M_mu(r), all in exact rational arithmetic."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from rdsemi import _poly as P
from rdsemi._rational import fmt, to_fraction
from rdsemi.errors import DomainError


class InvalidMomentSequence(DomainError):
    """The moment functional is not positive semidefinite."""


@dataclass(frozen=True)
class DiscreteMeasure:
    atoms: tuple  # ((point, weight), ...)

    def __post_init__(self):
        atoms = tuple((to_fraction(x), to_fraction(w)) for x, w in self.atoms)
        points = [x for x, _ in atoms]
        if len(set(points)) != len(points):
            raise DomainError("atom points must be distinct")
        if any(w <= 0 for _, w in atoms):
            raise DomainError("atom weights must be positive")
        if sum(w for _, w in atoms) != 1:
            raise DomainError("weights must sum to 1")
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))

    @classmethod
    def two_point(cls, lam=1) -> "DiscreteMeasure":
        """(delta_lam + delta_{-lam}) / 2."""
        lam = to_fraction(lam)
        return cls(((lam, Fraction(1, 2)), (-lam, Fraction(1, 2))))

    @classmethod
    def three_point(cls, a, lam=1) -> "DiscreteMeasure":
        """a (delta_lam + delta_{-lam}) + (1 - 2a) delta_0, 0 < a < 1/2."""
        a, lam = to_fraction(a), to_fraction(lam)
        atoms = [(lam, a), (-lam, a)]
        if 1 - 2 * a:
            atoms.append((Fraction(0), 1 - 2 * a))
        return cls(tuple(atoms))

    @property
    def points(self) -> tuple:
        return tuple(x for x, _ in self.atoms)

    @property
    def symmetric(self) -> bool:
        weights = dict(self.atoms)
        return all(weights.get(-x) == w for x, w in self.atoms)

    def __len__(self):
        return len(self.atoms)

    def moments(self, N: int) -> tuple:
        return tuple(sum((w * x ** k for x, w in self.atoms), Fraction(0))
                     for k in range(1, N + 1))

    def integrate(self, values: Sequence) -> Fraction:
        return sum((w * v for (_, w), v in zip(self.atoms, values)), Fraction(0))

    def to_json(self) -> str:
        return json.dumps({"atoms": [{"x": fmt(x), "w": fmt(w)} for x, w in self.atoms]})

    @classmethod
    def from_json(cls, text: str) -> "DiscreteMeasure":
        obj = json.loads(text)
        return cls(tuple((Fraction(a["x"]), Fraction(a["w"])) for a in obj["atoms"]))


@dataclass(frozen=True)
class PolySeq:
    """Monic p_0..p_K with squared norms; ``alpha[n][k]`` gives x^n = sum_k alpha p_k."""

    polys: tuple
    norms: tuple
    alpha: tuple

    @property
    def K(self) -> int:
        return len(self.polys) - 1

    def support_size(self) -> int | None:
        """First index with vanishing norm (the support size), or None."""
        for n, nrm in enumerate(self.norms):
            if nrm == 0:
                return n
        return None


def _alpha_table(polys) -> tuple:
    """Coefficients of x^n in the monic basis p_0..p_K by back substitution."""
    rows = []
    for n in range(len(polys)):
        rem = P.monomial(n)
        coeffs = [Fraction(0)] * (n + 1)
        for k in range(n, -1, -1):
            c = rem[k] if k < len(rem) else Fraction(0)
            if c:
                coeffs[k] = c
                rem = P.sub(rem, P.scale(polys[k], c))
        assert not rem
        rows.append(tuple(coeffs))
    return tuple(rows)


def _functional(moments):
    m = (Fraction(1),) + tuple(to_fraction(x) for x in moments)

    def L(p):
        if len(p) > len(m):
            raise DomainError(f"need moment m_{len(p) - 1}, have {len(m) - 1}")
        return sum((c * m[k] for k, c in enumerate(p)), Fraction(0))
    return L


def gram_schmidt(moments: Sequence, K: int) -> PolySeq:
    """Monic orthogonal polynomials p_0..p_K of the moment functional.

    Past the support size s the polynomials have norm 0 (they vanish on the
    support); they are still reported as monic polynomials of degree n.
    """
    if len(moments) < 2 * K:
        raise DomainError(f"gram_schmidt needs {2 * K} moments, got {len(moments)}")
    L = _functional(moments)
    polys, norms = [], []
    degenerate = False
    for n in range(K + 1):
        p = P.monomial(n)
        for pk, nk in zip(polys, norms):
            if nk:
                p = P.sub(p, P.scale(pk, L(P.mul(P.monomial(n), pk)) / nk))
        nrm = L(P.mul(p, p))
        if nrm < 0 or (degenerate and nrm != 0):
            raise InvalidMomentSequence(f"norm of p_{n} is {nrm}; not a measure")
        degenerate = degenerate or nrm == 0
        polys.append(p)
        norms.append(nrm)
    polys = tuple(polys)
    return PolySeq(polys, tuple(norms), _alpha_table(polys))


def jacobi_coeffs(ps: PolySeq) -> tuple:
    """b_1..b_K with p_{n+1} = x p_n - b_n p_{n-1}: b_n = ||p_n||^2 / ||p_{n-1}||^2."""
    return tuple(ps.norms[n] / ps.norms[n - 1] if ps.norms[n - 1] else Fraction(0)
                 for n in range(1, ps.K + 1))


def polys_from_jacobi(b: Sequence, K: int, sign: int = -1) -> tuple:
    """p_{n+1} = x p_n + sign * b_n p_{n-1}, p_0 = 1, p_1 = x."""
    polys = [P.ONE, P.X]
    for n in range(1, K):
        polys.append(P.add(P.shift(polys[n]), P.scale(polys[n - 1], sign * to_fraction(b[n - 1]))))
    return tuple(polys[:K + 1])


def q_integer(n: int, q) -> Fraction:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    q = to_fraction(q)
    return sum((q ** k for k in range(n)), Fraction(0))


def q_factorial(n: int, q) -> Fraction:
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= q_integer(k, q)
    return out


def q_hermite(K: int, q) -> tuple:
    """(PolySeq, b) for the q-Hermite family, b_n = [n]_q, ||H_n||^2 = [n]_q!."""
    q = to_fraction(q)
    if not -1 <= q <= 1:
        raise DomainError("q must lie in [-1, 1]")
    b = tuple(q_integer(n, q) for n in range(1, K + 1))
    polys = polys_from_jacobi(b, K)
    norms = tuple(q_factorial(n, q) for n in range(K + 1))
    return PolySeq(polys, norms, _alpha_table(polys)), b


def moments_from_jacobi(b: Sequence, N: int) -> tuple:
    """m_1..m_N of the symmetric functional with Jacobi coefficients b.

    m_k counts Dyck-type paths of length k from level 0, weighting a step down
    from level n by b_n.
    """
    b = [to_fraction(x) for x in b]
    if N > 2 * len(b) + 1:
        raise DomainError(f"{len(b)} coefficients determine at most {2 * len(b) + 1} moments")
    # a path above level len(b) cannot return within N <= 2 len(b) + 1 steps
    levels = min(N // 2 + 1, len(b))
    vec = [Fraction(1)] + [Fraction(0)] * levels
    out = []
    for _ in range(N):
        nxt = [Fraction(0)] * (levels + 1)
        for lvl, v in enumerate(vec):
            if not v:
                continue
            if lvl + 1 <= levels:
                nxt[lvl + 1] += v
            if lvl >= 1:
                nxt[lvl - 1] += v * b[lvl - 1]
        vec = nxt
        out.append(vec[0])
    return tuple(out)


def gram_matrix(polys: Sequence, moments: Sequence) -> list:
    L = _functional(moments)
    return [[L(P.mul(p, q)) for q in polys] for p in polys]


def measure_polys(mu: DiscreteMeasure) -> PolySeq:
    s = len(mu)
    return gram_schmidt(mu.moments(2 * s), s)


def mehler_eval(mu: DiscreteMeasure, r, x, y, ps: PolySeq | None = None) -> Fraction:
    """m_mu(r; x, y) = sum_n r^n p_n(x) p_n(y) / ||p_n||^2 over nonzero norms."""
    r, x, y = to_fraction(r), to_fraction(x), to_fraction(y)
    ps = measure_polys(mu) if ps is None else ps
    total = Fraction(0)
    for n, (p, nrm) in enumerate(zip(ps.polys, ps.norms)):
        if nrm:
            total += r ** n * P.evaluate(p, x) * P.evaluate(p, y) / nrm
    return total


def kernel_matrix(mu: DiscreteMeasure, r, ps: PolySeq | None = None) -> list:
    ps = measure_polys(mu) if ps is None else ps
    return [[mehler_eval(mu, r, x, y, ps) for y in mu.points] for x in mu.points]


def multiplier_on_values(mu: DiscreteMeasure, kernel: list, f: Sequence) -> list:
    """(M_mu(r) f)(x) = sum_y m(r; x, y) f(y) mu({y}) on the support."""
    return [sum((kxy * fy * w for kxy, fy, (_, w) in zip(row, f, mu.atoms)), Fraction(0))
            for row in kernel]


@dataclass(frozen=True)
class MarkovRow:
    r: Fraction
    min_value: Fraction
    markovian: bool
    positivity_preserving: bool
    l1_contractive: bool
    linf_contractive: bool
    trace_preserving: bool

    @property
    def consistent(self) -> bool:
        """Items 1-4 agree, and the trace is preserved."""
        flags = {self.markovian, self.positivity_preserving, self.l1_contractive,
                 self.linf_contractive}
        return len(flags) == 1 and self.trace_preserving


def markov_check(mu: DiscreteMeasure, r_grid: Sequence) -> list:
    """For each r: kernel minimum on supp x supp and the equivalent properties
    of M_mu(r) (positivity, L^1 and L^infinity contraction, trace)."""
    if not mu.symmetric:
        raise DomainError("markov_check expects a symmetric measure")
    ps = measure_polys(mu)
    s = len(mu)
    basis = [[Fraction(int(i == j)) for j in range(s)] for i in range(s)]
    rows = []
    for r in r_grid:
        r = to_fraction(r)
        K = kernel_matrix(mu, r, ps)
        min_value = min(min(row) for row in K)
        images = [multiplier_on_values(mu, K, e) for e in basis]
        # indicators span the cone of non-negative functions
        positive = all(v >= 0 for img in images for v in img)
        # extreme points of the L^1 unit ball are delta_y / mu({y})
        l1 = all(mu.integrate([abs(v) for v in img]) / w <= 1
                 for img, (_, w) in zip(images, mu.atoms))
        # sup-norm of M f over |f| <= 1 is attained at f = sign(kernel row)
        linf = all(sum((abs(kxy) * w for kxy, (_, w) in zip(row, mu.atoms)), Fraction(0)) <= 1
                   for row in K)
        trace = all(mu.integrate(img) == mu.integrate(e) for img, e in zip(images, basis))
        rows.append(MarkovRow(r, min_value, min_value >= 0, positive, l1, linf, trace))
    return rows


def markov_rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "min_value_num", "min_value_den", "markovian"])
    for row in rows:
        w.writerow([fmt(row.r), row.min_value.numerator, row.min_value.denominator,
                    str(row.markovian).lower()])
    return buf.getvalue()


def monomial_alpha(ps: PolySeq, n: int) -> tuple:
    """alpha_{n,0..n} with x^n = sum_k alpha_{n,k} p_k(x)."""
    if n > ps.K:
        raise DomainError(f"degree {n} exceeds polynomial family size {ps.K}")
    return ps.alpha[n]


def expand_in_basis(ps: PolySeq, f: Sequence) -> list:
    """Coefficients c_k with f = sum_k c_k p_k."""
    f = P.trim(f)
    if P.degree(f) > ps.K:
        raise DomainError(f"degree {P.degree(f)} exceeds polynomial family size {ps.K}")
    c = [Fraction(0)] * (ps.K + 1)
    for n, fn in enumerate(f):
        for k, a in enumerate(ps.alpha[n]):
            c[k] += fn * a
    return c


def multiplier_apply(ps: PolySeq, r, f: Sequence) -> tuple:
    """M_mu(r) f for a polynomial f: scale the p_n component by r^n."""
    r = to_fraction(r)
    out = P.ZERO
    for n, c in enumerate(expand_in_basis(ps, f)):
        if c:
            out = P.add(out, P.scale(ps.polys[n], c * r ** n))
    return out
