"""Moment/free-cumulant transforms and R-diagonal moments."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Iterable, Mapping, Sequence

from rdsemi._rational import fmt, to_fraction
from rdsemi.errors import DomainError
from rdsemi.noncrossing import (
    SetPartition,
    alternating_block_sum,
    enumerate_nc,
    enumerate_nc_alternating,
    moebius,
)
from rdsemi.strings import STAR, StarString, is_balanced

KINDS = ("circular", "haar_unitary", "from_even_measure", "custom")


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _weighted_compositions(values: Sequence[Fraction], parts: int, total: int) -> Fraction:
    """Sum over (i_1..i_parts) >= 0 with sum ``total`` of prod values[i_k],
    values[0] = 1."""
    # polynomial power: coefficient of z^total in (sum values[i] z^i)^parts
    row = [Fraction(0)] * (total + 1)
    row[0] = Fraction(1)
    for _ in range(parts):
        nxt = [Fraction(0)] * (total + 1)
        for a, ra in enumerate(row):
            if ra:
                for b in range(total - a + 1):
                    nxt[a + b] += ra * values[b]
        row = nxt
    return row[total]


def cumulants_to_moments(kappa: Sequence) -> tuple:
    """m_n = sum over NC(n) of products of block cumulants.

    Decomposes by the block of 1: if it has s elements, the s gaps it leaves
    carry independent moments.
    """
    kappa = [to_fraction(k) for k in kappa]
    m = [Fraction(1)]
    for n in range(1, len(kappa) + 1):
        total = Fraction(0)
        for s in range(1, n + 1):
            if kappa[s - 1]:
                total += kappa[s - 1] * _weighted_compositions(m, s, n - s)
        m.append(total)
    return tuple(m[1:])


def moments_to_cumulants(moments: Sequence) -> tuple:
    """Inverse of cumulants_to_moments: kappa_n = m_n - sum_{pi != 1_n} kappa_pi."""
    moments = [to_fraction(x) for x in moments]
    m = [Fraction(1)] + moments
    kappa: list[Fraction] = []
    for n in range(1, len(moments) + 1):
        rest = Fraction(0)
        for s in range(1, n):
            if kappa[s - 1]:
                rest += kappa[s - 1] * _weighted_compositions(m, s, n - s)
        kappa.append(m[n] - rest)
    return tuple(kappa)


def cumulants_to_moments_enum(kappa: Sequence) -> tuple:
    """Slow path: literal sum over NC(n)."""
    kappa = [to_fraction(k) for k in kappa]
    return tuple(sum((kappa_pi(kappa, p) for p in enumerate_nc(n)), Fraction(0))
                 for n in range(1, len(kappa) + 1))


def moments_to_cumulants_moebius(moments: Sequence) -> tuple:
    """Slow path: kappa_n = sum_{sigma in NC(n)} phi_sigma * Moeb(sigma, 1_n)."""
    moments = [to_fraction(x) for x in moments]
    out = []
    for n in range(1, len(moments) + 1):
        top = SetPartition.one_block(n)
        out.append(sum((phi_pi(moments, s) * moebius(s, top) for s in enumerate_nc(n)),
                       Fraction(0)))
    return tuple(out)


def _block_product(values: Sequence, p: SetPartition, name: str) -> Fraction:
    sizes = p.block_sizes()
    if sizes and max(sizes) > len(values):
        raise DomainError(f"{name} sequence of length {len(values)} too short for block "
                          f"of size {max(sizes)}")
    return prod((to_fraction(values[k - 1]) for k in sizes), start=Fraction(1))


def phi_pi(moments: Sequence, p: SetPartition) -> Fraction:
    """Product of m_{|V|} over the blocks of p."""
    return _block_product(moments, p, "moment")


def kappa_pi(kappa: Sequence, p: SetPartition) -> Fraction:
    return _block_product(kappa, p, "cumulant")


@dataclass(frozen=True)
class CumulantSpec:
    """Determining sequence d_n = kappa_{2n}[a, a*, ..., a, a*], n = 1..N."""

    d: tuple
    kind: str = "custom"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "d", tuple(to_fraction(x) for x in self.d))

    def __len__(self):
        return len(self.d)

    @classmethod
    def circular(cls, N: int = 16) -> "CumulantSpec":
        return cls(tuple([1] + [0] * (N - 1)), "circular")

    @classmethod
    def haar_unitary(cls, N: int = 16) -> "CumulantSpec":
        # (-1)^(n-1) C_{n-1}; the alternative (-1)^n C_{n-1} gives phi(u u*) = -1
        return cls(tuple((-1) ** (n - 1) * catalan(n - 1) for n in range(1, N + 1)),
                   "haar_unitary")

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "d": [fmt(x) for x in self.d]})

    @classmethod
    def from_json(cls, text: str) -> "CumulantSpec":
        obj = json.loads(text)
        return cls(tuple(Fraction(x) for x in obj["d"]), obj.get("kind", "custom"))


def haar_unitary_printed_sign(N: int = 16) -> CumulantSpec:
    """The sign convention (-1)^n C_{n-1}; kept to document that it fails."""
    return CumulantSpec(tuple((-1) ** n * catalan(n - 1) for n in range(1, N + 1)), "custom")


def _rdiag_weight(spec: CumulantSpec):
    def weight(first, size):
        half = size // 2
        if half > len(spec.d):
            raise DomainError(f"spec has {len(spec.d)} cumulants, block needs d_{half}")
        return spec.d[half - 1]
    return weight


def rdiag_moment(spec: CumulantSpec, s: StarString, method: str = "dp") -> Fraction:
    """phi(a^S) = sum over NC(S) of prod_V d_{|V|/2}.

    ``method="enumerate"`` walks NC(S) explicitly; the default uses interval
    dynamic programming over the same set.
    """
    if method == "enumerate":
        weight = _rdiag_weight(spec)
        return sum((prod((weight(None, len(b)) for b in p.blocks), start=Fraction(1))
                    for p in enumerate_nc_alternating(s)), Fraction(0))
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    if not is_balanced(s):
        return Fraction(0)
    if len(s) // 2 > len(spec.d):
        raise DomainError(f"spec has {len(spec.d)} cumulants, string needs {len(s) // 2}")
    return Fraction(alternating_block_sum(s.symbols, lambda a, b: a != b, _rdiag_weight(spec)))


def mixed_moment(specs: Mapping[int, CumulantSpec], letters: Iterable) -> Fraction:
    """phi(a_{j_1}^{e_1} ... a_{j_n}^{e_n}) for *-free R-diagonal generators.

    ``letters`` is a sequence of ``(j, e)`` with ``e`` in {+1, -1}; -1 is the
    adjoint.  Blocks must be generator-constant, even, and alternate in e.
    """
    letters = tuple((int(j), int(e)) for j, e in letters)
    for j, _ in letters:
        if j not in specs:
            raise DomainError(f"no cumulant spec for generator {j}")
    for j in {j for j, _ in letters}:
        if sum(e for jj, e in letters if jj == j) != 0:
            return Fraction(0)

    def compatible(a, b):
        return a[0] == b[0] and a[1] != b[1]

    def weight(first, size):
        d = specs[first[0]].d
        if size // 2 > len(d):
            raise DomainError(f"spec for a{first[0]} too short for block of size {size}")
        return d[size // 2 - 1]

    return Fraction(alternating_block_sum(letters, compatible, weight))


def from_even_measure(moments: Sequence) -> CumulantSpec:
    """Cumulant spec of the R-diagonal element whose symmetrised |a| has the
    given moments m_1, m_2, ...; rescaled so that m_2 = 1."""
    moments = [to_fraction(x) for x in moments]
    if len(moments) < 2:
        raise DomainError("need at least m_1 and m_2")
    if any(moments[k] for k in range(0, len(moments), 2)):
        raise DomainError("odd moments must vanish for a symmetric measure")
    m2 = moments[1]
    if m2 <= 0:
        raise DomainError("second moment must be positive")
    # x -> x / sqrt(m2) scales m_{2j} by m2^{-j}
    scaled = [Fraction(0) if k % 2 else moments[k - 1] / m2 ** (k // 2)
              for k in range(1, len(moments) + 1)]
    kappa = moments_to_cumulants(scaled)
    return CumulantSpec(tuple(kappa[1::2]), "from_even_measure")


def even_moments(spec: CumulantSpec, N: int | None = None) -> tuple:
    """Moments m_1..m_N of the symmetric measure whose even cumulants are d."""
    N = 2 * len(spec.d) if N is None else N
    kappa = [Fraction(0)] * N
    for n in range(1, N // 2 + 1):
        if n - 1 < len(spec.d):
            kappa[2 * n - 1] = spec.d[n - 1]
    return cumulants_to_moments(kappa)


def norm4_4(spec: CumulantSpec) -> Fraction:
    """||a||_4^4 = phi(a a* a a*)."""
    return rdiag_moment(spec, StarString.from_symbols("1*1*"))


def v_stat(spec: CumulantSpec) -> Fraction:
    """v(a) = ||a||_4^4 - 1 for a normalised so that ||a||_2 = 1."""
    return norm4_4(spec) - 1


def kappa4_identity_holds(spec: CumulantSpec) -> bool:
    """kappa_4[a, a*, a, a*] = ||a||_4^4 - 2 (normalised a)."""
    return len(spec.d) >= 2 and spec.d[1] == norm4_4(spec) - 2


def power_norm_sq(spec: CumulantSpec, n: int) -> Fraction:
    """||a^n||_2^2 = phi(a^n a^{*n}); only the nested pairing contributes."""
    return spec.d[0] ** n if n else Fraction(1)


def string_of(letters) -> StarString:
    """The 1/* exponent pattern of a generator word."""
    return StarString.from_symbols(["1" if e > 0 else STAR for _, e in letters])
