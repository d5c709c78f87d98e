"""Recompression grammar construction.

Builds an r-round grammar over a text by alternating two shrink passes:
odd rounds collapse maximal runs of equal adjacent symbols into power
productions, even rounds draw a random left/right classification of the
live symbols and merge every left symbol immediately followed by a right
symbol into a pair production.  Rounds repeat until the level string has
length one; a round that changes nothing still counts.

The coin stream is a counter-based mix of (seed, level, first-occurrence
rank of the symbol), so the construction is bit-reproducible for a fixed
(text, seed) regardless of platform or interning order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadLevelError, EmptyTextError, UnclassifiedSymbolError
from .grammar import POWER, Grammar, SymbolTable

LEFT = "L"
RIGHT = "R"

_MASK64 = (1 << 64) - 1

# Retry cap on the round count; the expected round count is O(log n), so a
# build that exceeds this had pathologically unlucky coins and is restarted
# with the next chained seed.
def round_cap(n: int) -> int:
    return 8 * math.ceil(math.log2(n + 1)) + 32


def _mix64(z: int) -> int:
    """splitmix64 finalizer; a 64-bit bijective scramble."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _coin(seed: int, level: int, rank: int) -> bool:
    h = _mix64(seed ^ _mix64((level << 32) ^ rank))
    return bool(h & 1)


@dataclass
class LevelString:
    """The symbol sequence after ``level`` shrink rounds (level 0 = the text)."""
    level: int
    symbols: list[int]


@dataclass
class Partition:
    """Left/right classification of the symbols of one level string."""
    classes: dict[int, str]


def draw_partition(s: LevelString, k: int, seed: int) -> Partition:
    """Classify each distinct symbol of ``s`` with a fair coin.

    Symbols are ranked by first occurrence, and each gets an independent
    deterministic coin keyed by (seed, k, rank).
    """
    classes: dict[int, str] = {}
    rank = 0
    for sym in s.symbols:
        if sym not in classes:
            classes[sym] = LEFT if _coin(seed, k, rank) else RIGHT
            rank += 1
    return Partition(classes)


def shrink_rle(s: LevelString, k: int, table: SymbolTable) -> LevelString:
    """Collapse maximal runs of equal adjacent symbols into powers at level ``k``."""
    assert k == s.level + 1 and k % 2 == 1
    syms = s.symbols
    out: list[int] = []
    i = 0
    n = len(syms)
    while i < n:
        j = i + 1
        while j < n and syms[j] == syms[i]:
            j += 1
        if j - i >= 2:
            out.append(table.intern_power(syms[i], j - i, k))
        else:
            out.append(syms[i])
        i = j
    return LevelString(k, out)


def shrink_pc(s: LevelString, k: int, p: Partition, table: SymbolTable) -> LevelString:
    """Merge every left symbol followed by a right symbol into a pair at level ``k``.

    Left/right disjointness means pair blocks never chain, so the local
    boundary rule and the left-to-right greedy scan agree.
    """
    assert k == s.level + 1 and k % 2 == 0
    classes = p.classes
    syms = s.symbols
    out: list[int] = []
    i = 0
    n = len(syms)
    try:
        while i < n:
            a = syms[i]
            ca = classes[a]
            if i + 1 < n and ca == LEFT and classes[syms[i + 1]] == RIGHT:
                out.append(table.intern_pair(a, syms[i + 1], k))
                i += 2
            else:
                out.append(a)
                i += 1
    except KeyError as exc:
        raise UnclassifiedSymbolError(f"symbol {exc} missing from partition") from None
    return LevelString(k, out)


def build(text: str, seed: int = 0) -> Grammar:
    """Build the grammar of ``text``; deterministic for a fixed (text, seed).

    If the round count would exceed ``round_cap(len(text))``, the build
    restarts with seed+1 (chained); the returned grammar records the seed
    actually used.
    """
    if len(text) == 0:
        raise EmptyTextError("cannot build a grammar for the empty text")
    n = len(text)
    cap = round_cap(n)
    use_seed = seed & _MASK64
    while True:
        table = SymbolTable()
        cur = LevelString(0, [table.intern_terminal(ch) for ch in text])
        while len(cur.symbols) > 1 and cur.level < cap:
            k = cur.level + 1
            if k % 2 == 1:
                cur = shrink_rle(cur, k, table)
            else:
                cur = shrink_pc(cur, k, draw_partition(cur, k, use_seed), table)
        if len(cur.symbols) == 1:
            return Grammar(table=table, start=cur.symbols[0], rounds=cur.level,
                           seed=use_seed, text_len=n)
        use_seed = (use_seed + 1) & _MASK64


def level_string(g: Grammar, k: int) -> LevelString:
    """Reconstruct the level-``k`` string by expanding symbols above level ``k``.

    Used by tests and the oracle; queries never materialize level strings.
    """
    if not (0 <= k <= g.rounds):
        raise BadLevelError(f"level {k} outside [0, {g.rounds}]")
    t = g.table
    lvl = t.level
    out: list[int] = []
    stack = [g.start]
    while stack:
        s = stack.pop()
        if lvl[s] <= k:
            out.append(s)
        elif t.kind[s] == POWER:
            b, m = t.arg0[s], t.arg1[s]
            if lvl[b] <= k:
                out.extend([b] * m)
            else:
                stack.extend([b] * m)
        else:  # PAIR
            stack.append(t.arg1[s])
            stack.append(t.arg0[s])
    return LevelString(k, out)


def partition_for_level(g: Grammar, k: int) -> Partition:
    """Replay the partition the builder drew for even round ``k``."""
    if not (2 <= k <= g.rounds and k % 2 == 0):
        raise BadLevelError(f"no partition at level {k}")
    return draw_partition(level_string(g, k - 1), k, g.seed)
