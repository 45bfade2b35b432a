"""Fuss-Catalan numbers and the bounds on |NC_2(S)|, with an exhaustive harness."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, factorial

from rdsemi._parallel import pmap
from rdsemi.errors import DomainError, ResourceLimitError
from rdsemi.noncrossing import count_nc2, count_nc_alternating
from rdsemi.strings import (
    StarString,
    all_balanced,
    format_string,
    is_balanced,
    min_block_size,
    num_runs,
    path_height,
    rotate_min_first,
)

MAX_VERIFY_LEN = 16

CSV_FIELDS = ("string", "n", "r", "i", "h", "count_nc2", "count_nc", "lower",
              "upper_height", "upper_length_num", "upper_length_den", "pass")


def fuss_catalan(n: int, r: int) -> int:
    """C_r^{(n)} = binom((n+1) r, r) / (n r + 1)."""
    if n < 0 or r < 0:
        raise DomainError("fuss_catalan needs n, r >= 0")
    q, rem = divmod(comb((n + 1) * r, r), n * r + 1)
    assert rem == 0
    return q


def _check(s: StarString) -> tuple:
    if not is_balanced(s):
        raise DomainError(f"{format_string(s)} is not balanced")
    r = num_runs(s)
    if r < 1:
        raise DomainError("bounds need at least one run")
    return r, min_block_size(s)


def nc2_lower(s: StarString) -> int:
    """(1 + i)^(r - 1), i the minimum block size."""
    r, i = _check(s)
    return (1 + i) ** (r - 1)


def height_after_rotation(s: StarString) -> int:
    return path_height(rotate_min_first(s))


def nc2_upper_height(s: StarString) -> int:
    """C_r^{(h)} with h the lattice-path height."""
    r, _ = _check(s)
    return fuss_catalan(height_after_rotation(s), r)


def length_bound(r: int, k: int) -> Fraction:
    """r^(r-1) / r! * (1 + k)^(r-1), exact."""
    return Fraction(r ** (r - 1) * (1 + k) ** (r - 1), factorial(r))


def nc2_upper_length_exact(s: StarString) -> Fraction:
    r, _ = _check(s)
    return length_bound(r, len(s) // 2)


def nc2_upper_length(s: StarString) -> int:
    return ceil(nc2_upper_length_exact(s))


def two_run_counts(s: StarString) -> tuple:
    """(|NC_2(S)|, |NC(S)|) = (1 + min, 1 + 2 min) for a balanced 2-run string."""
    r, i = _check(s)
    if r != 2:
        raise DomainError(f"two_run_counts needs r = 2, got r = {r}")
    return 1 + i, 1 + 2 * i


@dataclass(frozen=True)
class BoundReport:
    string: str
    n: int
    r: int
    i: int
    h: int
    count_nc2: int
    count_nc: int
    lower: int
    upper_height: int
    upper_height_rational: Fraction
    upper_length: Fraction
    two_run_exact: tuple | None
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def csv_row(self) -> dict:
        return {"string": self.string, "n": self.n, "r": self.r, "i": self.i, "h": self.h,
                "count_nc2": self.count_nc2, "count_nc": self.count_nc, "lower": self.lower,
                "upper_height": self.upper_height,
                "upper_length_num": self.upper_length.numerator,
                "upper_length_den": self.upper_length.denominator,
                "pass": str(self.passed).lower()}


def bound_report(s: StarString) -> BoundReport:
    r, i = _check(s)
    n = len(s) // 2
    h = height_after_rotation(s)
    c2 = count_nc2(s)
    c = count_nc_alternating(s)
    lower = (1 + i) ** (r - 1)
    upper_h = fuss_catalan(h, r)
    upper_h_rat = length_bound(r, h)
    upper_n = length_bound(r, n)
    two = two_run_counts(s) if r == 2 else None
    checks = (
        ("lower <= nc2", lower <= c2),
        ("nc2 <= C_r^(h)", c2 <= upper_h),
        ("C_r^(h) <= height bound", upper_h <= upper_h_rat),
        ("height bound <= length bound", upper_h_rat <= upper_n),
        ("h <= n", h <= n),
        ("nc2 <= nc", c2 <= c),
        ("two-run exact", two is None or two == (c2, c)),
    )
    return BoundReport(format_string(s), n, r, i, h, c2, c, lower, upper_h, upper_h_rat,
                       upper_n, two, checks)


def verify_bounds(max_len: int) -> list:
    """BoundReports for every balanced string of length 2..max_len."""
    if max_len > MAX_VERIFY_LEN:
        raise ResourceLimitError(f"max_len {max_len} exceeds guard {MAX_VERIFY_LEN}")
    strings = [s for L in range(2, max_len + 1, 2) for s in all_balanced(L)]
    return pmap(bound_report, strings)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(rep.csv_row())
    return buf.getvalue()
