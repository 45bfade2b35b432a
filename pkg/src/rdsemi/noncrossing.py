"""Non-crossing partitions: NC(n), its Moebius function, NC(S) and NC_2(S)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from rdsemi.errors import DomainError, ResourceLimitError
from rdsemi.strings import ONE, StarString, is_balanced, lattice_path

MAX_NC_N = 12
MAX_NC_STRING = 24


@dataclass(frozen=True)
class SetPartition:
    """Partition of {1..n}; blocks sorted internally and by minimum."""

    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        seen = [x for b in blocks for x in b]
        if any(not b for b in blocks) or sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {self.blocks} do not partition 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls(n, tuple((k,) for k in range(1, n + 1)))

    @classmethod
    def one_block(cls, n: int) -> "SetPartition":
        return cls(n, ((tuple(range(1, n + 1))),) if n else ())

    def block_sizes(self) -> list:
        return [len(b) for b in self.blocks]

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def parse_partition(text: str, n: int | None = None) -> SetPartition:
    """Inverse of ``str(SetPartition)``: ``"{1,4}{2,3}"``."""
    blocks = [tuple(int(x) for x in body.split(",")) for body in re.findall(r"\{([^}]*)\}", text)]
    size = n if n is not None else sum(len(b) for b in blocks)
    return SetPartition(size, tuple(blocks))


def is_noncrossing(p: SetPartition) -> bool:
    owner = {x: k for k, b in enumerate(p.blocks) for x in b}
    # crossing iff a<b<c<d with a,c in V and b,d in W != V
    for k, block in enumerate(p.blocks):
        for a, c in zip(block, block[1:]):
            inside = {owner[x] for x in range(a + 1, c)}
            for w in inside:
                if w != k and any(x < a or x > c for x in p.blocks[w]):
                    return False
    return True


def _generate(n: int, can_join: Callable[[list, int], bool] | None = None,
              closable: Callable[[list], bool] | None = None):
    """Yield non-crossing partitions of 1..n as lists of blocks.

    Elements are placed left to right; a new element may open a block or join a
    block on the open stack, which closes every block above it.
    """
    def rec(x, stack, closed):
        if x > n:
            if closable is None or all(closable(b) for b in stack):
                yield closed + stack
            return
        # open a new block
        stack.append([x])
        yield from rec(x + 1, stack, closed)
        stack.pop()
        for depth in range(len(stack) - 1, -1, -1):
            block = stack[depth]
            if can_join is not None and not can_join(block, x):
                continue
            popped = stack[depth + 1:]
            if closable is not None and not all(closable(b) for b in popped):
                # deeper joins would close these blocks too
                break
            del stack[depth + 1:]
            block.append(x)
            yield from rec(x + 1, stack, closed + popped)
            block.pop()
            stack.extend(popped)

    yield from rec(1, [], [])


def _to_partitions(n, raw) -> list:
    parts = [SetPartition(n, tuple(tuple(b) for b in blocks)) for blocks in raw]
    parts.sort(key=lambda p: p.blocks)
    return parts


@lru_cache(maxsize=None)
def _nc_cached(n: int) -> tuple:
    return tuple(_to_partitions(n, _generate(n)))


def enumerate_nc(n: int) -> list:
    """All of NC(n), sorted by canonical block encoding."""
    if n < 0:
        raise DomainError("n must be non-negative")
    if n > MAX_NC_N:
        raise ResourceLimitError(f"NC({n}) exceeds the guard n <= {MAX_NC_N}")
    return list(_nc_cached(n))


def leq(s: SetPartition, p: SetPartition) -> bool:
    """Refinement order: every block of s lies inside a block of p."""
    if s.n != p.n:
        return False
    owner = {x: k for k, b in enumerate(p.blocks) for x in b}
    return all(len({owner[x] for x in b}) == 1 for b in s.blocks)


def moebius(s: SetPartition, p: SetPartition) -> int:
    """Moebius function of NC(n) by recursion over the interval [s, p]."""
    if not leq(s, p):
        raise DomainError(f"{s} is not below {p}")
    if s == p:
        return 1
    interval = [t for t in enumerate_nc(s.n) if leq(s, t) and leq(t, p)]
    # finer partitions first: t < u implies t has more blocks
    interval.sort(key=lambda t: -len(t.blocks))
    mu = {}
    for t in interval:
        if t == s:
            mu[t] = 1
        else:
            mu[t] = -sum(v for u, v in mu.items() if leq(u, t))
    return mu[p]


def _alternates(symbols: Sequence[str]) -> Callable[[list, int], bool]:
    return lambda block, x: symbols[block[-1] - 1] != symbols[x - 1]


def enumerate_nc_alternating(s: StarString) -> list:
    """NC(S): blocks of even size alternating between 1 and * along S."""
    if len(s) > MAX_NC_STRING:
        raise ResourceLimitError(f"string length {len(s)} exceeds guard {MAX_NC_STRING}")
    sym = s.symbols
    raw = _generate(len(sym), _alternates(sym), lambda b: len(b) % 2 == 0)
    return _to_partitions(len(sym), raw)


def enumerate_nc2(s: StarString) -> list:
    """NC_2(S): the pairings in NC(S)."""
    if len(s) > MAX_NC_STRING:
        raise ResourceLimitError(f"string length {len(s)} exceeds guard {MAX_NC_STRING}")
    sym = s.symbols
    n = len(sym)

    def rec(lo, hi):
        # pairings of positions lo..hi-1 (0-based)
        if lo == hi:
            yield []
            return
        for k in range(lo + 1, hi, 2):
            if sym[k] == sym[lo]:
                continue
            for inner in rec(lo + 1, k):
                for outer in rec(k + 1, hi):
                    yield [(lo + 1, k + 1)] + inner + outer

    if n % 2:
        return []
    return _to_partitions(n, rec(0, n))


def count_nc2(s: StarString) -> int:
    """|NC_2(S)| by interval dynamic programming on the lattice path.

    The first letter of an interval pairs with an opposite letter at the same
    path level; the count is inside times outside.
    """
    if not is_balanced(s):
        return 0
    h = lattice_path(s).heights
    sym = s.symbols

    @lru_cache(maxsize=None)
    def count(lo, hi):
        if lo == hi:
            return 1
        total = 0
        for k in range(lo + 1, hi, 2):
            # substring lo..k balanced  <=>  h[k+1] == h[lo]
            if h[k + 1] == h[lo] and sym[k] != sym[lo]:
                total += count(lo + 1, k) * count(k + 1, hi)
        return total

    return count(0, len(sym))


def alternating_block_sum(letters: Sequence, compatible: Callable, weight: Callable):
    """Sum over non-crossing partitions of ``letters`` whose blocks are chains
    of pairwise ``compatible`` consecutive letters of even size.

    Each block contributes ``weight(first_letter, size)``; a partition
    contributes the product over its blocks.  Interval dynamic programming,
    polynomial in the word length.
    """
    letters = tuple(letters)
    L = len(letters)

    @lru_cache(maxsize=None)
    def whole(lo, hi):
        if lo == hi:
            return 1
        return chain(lo, lo, hi, 1)

    @lru_cache(maxsize=None)
    def chain(start, last, hi, size):
        # block containing `start` currently ends at `last` with `size` members;
        # positions last+1..hi-1 still to be placed
        total = 0
        if size % 2 == 0:
            w = weight(letters[start], size)
            if w:
                total += w * whole(last + 1, hi)
        for nxt in range(last + 1, hi):
            if compatible(letters[last], letters[nxt]):
                gap = whole(last + 1, nxt)
                if gap:
                    total += gap * chain(start, nxt, hi, size + 1)
        return total

    return whole(0, L)


def count_nc_alternating(s: StarString) -> int:
    """|NC(S)| without enumeration."""
    if not is_balanced(s):
        return 0
    return alternating_block_sum(s.symbols, lambda a, b: a != b, lambda first, size: 1)


def is_pairing(p: SetPartition) -> bool:
    return all(len(b) == 2 for b in p.blocks)


def pairs_level_matched(s: StarString, p: SetPartition) -> bool:
    """Every pair joins an up-step and a down-step at the same path level."""
    h = lattice_path(s).heights
    sym = s.symbols
    for a, b in p.blocks:
        up, down = (a, b) if sym[a - 1] == ONE else (b, a)
        # up-step at position x spans levels h[x-1] -> h[x]; down-step h[x-1] -> h[x]
        if sym[up - 1] != ONE or sym[down - 1] == ONE:
            return False
        if {h[up - 1], h[up]} != {h[down - 1], h[down]}:
            return False
    return True
