"""1/* exponent strings: run-length form, rotations, lattice paths, families."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from rdsemi.errors import DomainError, StringParseError

ONE = "1"
STAR = "*"
_SYMBOLS = (ONE, STAR)


@dataclass(frozen=True)
class StarString:
    """A word in {1, *} stored as maximal runs ``((symbol, length), ...)``."""

    runs: tuple = ()

    def __post_init__(self):
        runs = tuple((sym, int(k)) for sym, k in self.runs)
        for k, (sym, length) in enumerate(runs):
            if sym not in _SYMBOLS:
                raise ValueError(f"unknown symbol {sym!r}")
            if length < 1:
                raise ValueError("run lengths must be positive")
            if k and runs[k - 1][0] == sym:
                raise ValueError("adjacent runs must alternate; use from_runs to merge")
        object.__setattr__(self, "runs", runs)

    @classmethod
    def from_runs(cls, runs) -> "StarString":
        """Build from possibly non-canonical runs, merging equal neighbours."""
        merged: list[list] = []
        for sym, length in runs:
            if length < 1:
                raise ValueError("run lengths must be positive")
            if merged and merged[-1][0] == sym:
                merged[-1][1] += length
            else:
                merged.append([sym, length])
        return cls(tuple(map(tuple, merged)))

    @classmethod
    def from_symbols(cls, symbols: Sequence[str]) -> "StarString":
        return cls.from_runs((s, 1) for s in symbols)

    @classmethod
    def regular(cls, n: int, r: int) -> "StarString":
        """The regular string (1^n, *^n)^r."""
        return cls.from_runs([(ONE, n), (STAR, n)] * r if n else [])

    @property
    def symbols(self) -> tuple:
        return tuple(s for s, k in self.runs for _ in range(k))

    @property
    def num_ones(self) -> int:
        return sum(k for s, k in self.runs if s == ONE)

    @property
    def num_stars(self) -> int:
        return sum(k for s, k in self.runs if s == STAR)

    def __len__(self) -> int:
        return sum(k for _, k in self.runs)

    def __str__(self) -> str:
        return format_string(self)


@dataclass(frozen=True)
class LatticePath:
    heights: tuple

    @property
    def length(self) -> int:
        return len(self.heights) - 1


_TOKEN = re.compile(r"\s*([1*])(?:\^(\d+))?")


def parse_string(text: str) -> StarString:
    """Parse ``"1^3 *^2 1 *^2"`` or ``"11**"`` into canonical run form."""
    runs = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        m = _TOKEN.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise StringParseError(f"unexpected character {text[offset]!r}", offset)
        sym, rep = m.group(1), m.group(2)
        k = 1 if rep is None else int(rep)
        if k < 1:
            raise StringParseError("run length must be at least 1", m.start(2))
        runs.append((sym, k))
        pos = m.end()
    return StarString.from_runs(runs)


def format_string(s: StarString) -> str:
    return " ".join(sym if k == 1 else f"{sym}^{k}" for sym, k in s.runs)


def is_balanced(s: StarString) -> bool:
    return s.num_ones == s.num_stars


def _cyclic_runs(s: StarString) -> list:
    runs = [list(r) for r in s.runs]
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:
        runs[0][1] += runs.pop()[1]
    return runs


def num_runs(s: StarString) -> int:
    """Number of maximal 1-blocks, read cyclically."""
    return sum(1 for sym, _ in _cyclic_runs(s) if sym == ONE)


def rotate(s: StarString, k: int) -> StarString:
    """Cyclic left rotation by ``k`` positions."""
    sym = s.symbols
    if not sym:
        return s
    k %= len(sym)
    return StarString.from_symbols(sym[k:] + sym[:k])


def swap_symbols(s: StarString) -> StarString:
    flip = {ONE: STAR, STAR: ONE}
    return StarString(tuple((flip[sym], k) for sym, k in s.runs))


def min_block_size(s: StarString) -> int:
    """Smallest maximal block length, blocks read cyclically."""
    if not s.runs:
        raise DomainError("empty string has no blocks")
    return min(k for _, k in _cyclic_runs(s))


def rotate_min_first(s: StarString) -> StarString:
    """Rotate so the string opens with a 1-block of minimum size.

    When the minimum sits only on *-blocks, that block is rotated to the front
    and the roles of 1 and * are exchanged; |NC(S)| and |NC_2(S)| are invariant
    under both moves.
    """
    if not is_balanced(s):
        raise DomainError("rotate_min_first needs a balanced string")
    if not s.runs:
        return s
    i = min_block_size(s)
    sym = s.symbols
    n = len(sym)
    # block starts: positions whose cyclic predecessor differs
    starts = [p for p in range(n) if sym[p] != sym[p - 1]]
    if not starts:
        raise DomainError("balanced nonempty string must contain both symbols")
    for target in (ONE, STAR):
        for p in starts:
            if sym[p] != target:
                continue
            length = 1
            while length < n and sym[(p + length) % n] == target:
                length += 1
            if length == i:
                out = rotate(s, p)
                return out if target == ONE else swap_symbols(out)
    raise AssertionError("minimum block not found")


def lattice_path(s: StarString) -> LatticePath:
    heights = [0]
    for sym in s.symbols:
        heights.append(heights[-1] + (1 if sym == ONE else -1))
    return LatticePath(tuple(heights))


def path_height(s: StarString) -> int:
    """Vertical extent max - min of the lattice path."""
    h = lattice_path(s).heights
    return max(h) - min(h)


def compositions(n: int, parts: int, minimum: int = 1) -> Iterator[tuple]:
    """Ordered compositions of ``n`` into ``parts`` parts, each >= ``minimum``,
    in lexicographic order."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(minimum, n - minimum * (parts - 1) + 1):
        for rest in compositions(n - first, parts - 1, minimum):
            yield (first,) + rest


def string_from_blocks(ns: Sequence[int], ms: Sequence[int]) -> StarString:
    """(1^{n_1}, *^{m_1}, ..., 1^{n_r}, *^{m_r}); zero exponents are skipped."""
    runs = []
    for a, b in zip(ns, ms):
        if a:
            runs.append((ONE, a))
        if b:
            runs.append((STAR, b))
    return StarString.from_runs(runs)


def enumerate_strings(n: int, r: int, i: int | None = None) -> list:
    """Balanced strings (1^{n_1}, *^{m_1}, ..., 1^{n_r}, *^{m_r}) with all
    exponents >= 1 summing to n on each side; optionally minimum block = i."""
    if r < 1 or n < r:
        return []
    comps = list(compositions(n, r))
    out = []
    for ns, ms in itertools.product(comps, comps):
        if i is not None and min(ns + ms) != i:
            continue
        out.append(string_from_blocks(ns, ms))
    return out


def all_balanced(length: int) -> Iterator[StarString]:
    """Every balanced string of the given even length, lexicographically."""
    if length % 2:
        return
    half = length // 2
    for ones in itertools.combinations(range(length), half):
        chosen = set(ones)
        yield StarString.from_symbols([ONE if p in chosen else STAR for p in range(length)])
