"""Truncated psi_t = sum_n e^{-nt} a^n norms and log-log exponent fits."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from rdsemi._parallel import pmap
from rdsemi._rational import to_fraction
from rdsemi.cumulants import CumulantSpec, rdiag_moment, v_stat
from rdsemi.errors import DomainError, ResourceLimitError
from rdsemi.strings import compositions, string_from_blocks

MAX_BRUTE_N = 8
MAX_BRUTE_R = 3
FIT_TOLERANCE = 0.1
SCAN_FIELDS = ("t", "N", "norm2_sq", "norm4_4", "ratio_p4", "ratio_inf")


@dataclass(frozen=True)
class FitReport:
    slope: float
    intercept: float
    residual: float
    values: tuple
    target: float | None = None
    tolerance: float = FIT_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.target is not None and abs(self.slope - self.target) <= self.tolerance

    def to_dict(self) -> dict:
        return {"target": self.target, "slope": self.slope, "tolerance": self.tolerance,
                "pass": self.passed}


def fit_loglog(ts: Sequence[float], values: Sequence[float], target: float | None = None,
               tolerance: float = FIT_TOLERANCE) -> FitReport:
    """Least squares line through (log t, log value)."""
    x, y = np.log(np.asarray(ts, float)), np.log(np.asarray(values, float))
    (slope, intercept), res, *_ = np.polyfit(x, y, 1, full=True)
    rms = math.sqrt(res[0] / len(x)) if len(res) else 0.0
    return FitReport(float(slope), float(intercept), rms, tuple(map(float, values)),
                     target, tolerance)


def truncation(t: float, c: float = 40) -> int:
    return math.ceil(c / t)


def psi_norm2_sq(t: float, N: int, spec: CumulantSpec | None = None) -> float:
    """||psi_t||_2^2 truncated at n <= N; ||a^n||_2^2 = d_1^n."""
    d1 = 1.0 if spec is None else float(spec.d[0])
    n = np.arange(N + 1)
    return float(np.sum(np.exp(-2 * n * t) * d1 ** n))


def inner_min_sum(n: int) -> int:
    """sum_{i,j=0..n} min(i, j, n-i, n-j) = n (n^2 - 1) / 6.

    min >= k holds on an (n+1-2k)^2 square, so the sum is a sum of squares of
    one parity.
    """
    return n * (n * n - 1) // 6


def inner_min_sum_bruteforce(n: int) -> int:
    return sum(min(i, j, n - i, n - j) for i in range(n + 1) for j in range(n + 1))


def psi_4norm4_circular(t: float, N: int, v: float) -> float:
    """||psi_{2t}||_4^4 = sum_n e^{-4nt} sum_{n1+n2=m1+m2=n} (1 + v min{n1,m1,n2,m2})."""
    if v < 0:
        raise DomainError("v must be non-negative")
    n = np.arange(N + 1, dtype=float)
    inner = (n + 1) ** 2 + v * n * (n * n - 1) / 6
    return float(np.sum(np.exp(-4 * n * t) * inner))


def stated_inner_bound(n: int) -> Fraction:
    """n^3/48 + n^2/4 + n/3, the stated lower estimate for the inner sum."""
    return Fraction(n ** 3, 48) + Fraction(n ** 2, 4) + Fraction(n, 3)


def psi_pnorm_bruteforce(q, N: int, r: int, spec: CumulantSpec) -> Fraction:
    """phi((psi psi*)^r) truncated at total degree n <= N, with psi = sum q^n a^n.

    Each composition pair (n_1..n_r), (m_1..m_r) of n contributes
    q^{2n} phi(a^{n_1} a*^{m_1} ... a^{n_r} a*^{m_r}).
    """
    q = to_fraction(q)
    if N > MAX_BRUTE_N or r > MAX_BRUTE_R:
        raise ResourceLimitError(f"brute force limited to N <= {MAX_BRUTE_N}, r <= {MAX_BRUTE_R}")
    if N < 0 or r < 1:
        raise DomainError("need N >= 0 and r >= 1")
    total = Fraction(0)
    for n in range(N + 1):
        comps = list(compositions(n, r, minimum=0))
        inner = sum((rdiag_moment(spec, string_from_blocks(ns, ms))
                     for ns in comps for ms in comps), Fraction(0))
        total += q ** (2 * n) * inner
    return total


def sum_exp(q_power: int, t: float, N: int) -> float:
    """sum_{n<=N} n^q e^{-nt}."""
    if q_power < 0:
        raise DomainError("q_power must be non-negative")
    n = np.arange(N + 1, dtype=float)
    return float(np.sum(n ** q_power * np.exp(-n * t)))


def sum_exp_slope(q_power: int, grid: Sequence[float], c: float = 40,
                  tolerance: float = 0.05) -> FitReport:
    values = [sum_exp(q_power, t, truncation(t, c)) for t in grid]
    return fit_loglog(grid, values, target=-(q_power + 1), tolerance=tolerance)


def log_grid(t_min: float, t_max: float, points: int) -> list:
    if points < 2 or not 0 < t_min < t_max < 1:
        raise DomainError("grid needs 0 < t_min < t_max < 1 and at least 2 points")
    return [float(x) for x in np.geomspace(t_min, t_max, points)]


@dataclass(frozen=True)
class ScanConfig:
    t_grid: tuple
    c: float = 40
    p: int = 4
    model: str = "circular"
    spec: CumulantSpec | None = None

    def __post_init__(self):
        grid = tuple(float(t) for t in self.t_grid)
        if not grid:
            raise DomainError("empty t grid")
        if any(not 0 < t < 1 for t in grid) or list(grid) != sorted(grid):
            raise DomainError("t grid must be ascending inside (0, 1)")
        if self.c < 30:
            raise DomainError("truncation constant c must be >= 30")
        if self.p not in (2, 4):
            raise DomainError("only p in {2, 4} is supported")
        if self.model not in ("circular", "haar", "custom"):
            raise DomainError(f"unknown model {self.model!r}")
        if self.model == "custom" and self.spec is None:
            raise DomainError("custom model needs a cumulant spec")
        object.__setattr__(self, "t_grid", grid)

    def v(self) -> float:
        if self.model == "circular":
            return 1.0
        if self.model == "haar":
            return 0.0
        if self.spec.d[0] != 1:
            raise DomainError("custom spec must be normalised (d_1 = 1)")
        v = v_stat(self.spec)
        if v < 0:
            raise DomainError("custom spec needs v >= 0")
        return float(v)


@dataclass(frozen=True)
class ScanRow:
    t: float
    N: int
    norm2_sq: float
    norm4_4: float
    ratio_p4: float
    ratio_inf: float
    b_norm2_sq: float


@dataclass(frozen=True)
class ScanResult:
    config: ScanConfig
    rows: tuple
    fits: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SCAN_FIELDS)
        for row in self.rows:
            w.writerow([repr(row.t), row.N, repr(row.norm2_sq), repr(row.norm4_4),
                        repr(row.ratio_p4), repr(row.ratio_inf)])
        return buf.getvalue()

    def fits_json(self) -> str:
        return json.dumps({k: f.to_dict() for k, f in self.fits.items()})


def _scan_point(args) -> ScanRow:
    t, c, v, p = args
    N = truncation(t, c)
    a = psi_4norm4_circular(t, N, v)          # ||psi_{2t}||_4^4
    b = psi_norm2_sq(2 * t, N)                # ||psi_{2t}||_2^2
    base = psi_norm2_sq(t, N)                 # ||psi_t||_2^2
    top = a ** 0.25 if p == 4 else math.sqrt(b)
    return ScanRow(t, N, base, a, top / math.sqrt(base), math.sqrt(a / b) / math.sqrt(base), b)


def targets(v: float, p: int) -> dict:
    """Expected exponents: v > 0 behaves like circular, v = 0 like Haar."""
    if v > 0:
        return {"A": -4.0, "R_p": -1 + 2 / p, "R_inf": -1.0}
    return {"A": -3.0, "R_p": -0.5 + 1 / p, "R_inf": -0.5}


def ultracontractive_scan(cfg: ScanConfig) -> ScanResult:
    v = cfg.v()
    rows = tuple(pmap(_scan_point, [(t, cfg.c, v, cfg.p) for t in cfg.t_grid], min_items=64))
    goal = targets(v, cfg.p)
    ts = cfg.t_grid
    fits = {
        "A": fit_loglog(ts, [r.norm4_4 for r in rows], goal["A"]),
        "R_p": fit_loglog(ts, [r.ratio_p4 for r in rows], goal["R_p"]),
        "R_inf": fit_loglog(ts, [r.ratio_inf for r in rows], goal["R_inf"]),
    }
    return ScanResult(cfg, rows, fits)
