"""Interned symbol universe for run-length straight-line programs.

A symbol is a terminal character, a pair production ``BC`` with ``B != C``,
or a power production ``B^m`` with ``m >= 2``.  Structurally identical
symbols are hash-consed onto one dense integer id, and every symbol stores
the length of its expansion and the compression round that created it.
Symbol ids are assigned in creation order, so a grammar built from a fixed
(text, seed) always serializes the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadExponentError,
    BadLevelError,
    EqualChildrenError,
    UnknownSymbolError,
)

TERMINAL = 0
PAIR = 1
POWER = 2


class SymbolTable:
    """Append-only store of interned symbols.

    Parallel arrays keep per-symbol data cheap to read in query hot loops:
    ``arg0`` holds the codepoint / left child / base, ``arg1`` the right
    child / exponent.  Mutation happens only while the builder runs; after
    that the table is read-only by contract.
    """

    __slots__ = ("kind", "arg0", "arg1", "level", "explen",
                 "_terminals", "_pairs", "_powers")

    def __init__(self) -> None:
        self.kind: list[int] = []
        self.arg0: list[int] = []
        self.arg1: list[int] = []
        self.level: list[int] = []
        self.explen: list[int] = []
        self._terminals: dict[int, int] = {}
        self._pairs: dict[tuple[int, int], int] = {}
        self._powers: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.kind)

    def _append(self, kind: int, a0: int, a1: int, level: int, explen: int) -> int:
        sid = len(self.kind)
        self.kind.append(kind)
        self.arg0.append(a0)
        self.arg1.append(a1)
        self.level.append(level)
        self.explen.append(explen)
        return sid

    def check(self, sid: int) -> None:
        if not (0 <= sid < len(self.kind)):
            raise UnknownSymbolError(f"symbol id {sid} not in table")

    def intern_terminal(self, ch) -> int:
        """Intern a terminal; ``ch`` is a codepoint or a 1-character string."""
        cp = ord(ch) if isinstance(ch, str) else int(ch)
        sid = self._terminals.get(cp)
        if sid is None:
            sid = self._append(TERMINAL, cp, 0, 0, 1)
            self._terminals[cp] = sid
        return sid

    def intern_pair(self, b: int, c: int, level: int) -> int:
        """Intern the pair production ``bc`` created at compression round ``level``.

        If the pair already exists, the original id is returned and the level
        argument is ignored (the level is fixed at first creation).
        """
        sid = self._pairs.get((b, c))
        if sid is not None:
            return sid
        self.check(b)
        self.check(c)
        if b == c:
            raise EqualChildrenError(f"pair children must differ, got {b} twice")
        if level <= max(self.level[b], self.level[c]):
            raise BadLevelError(
                f"pair level {level} not above children levels "
                f"{self.level[b]}, {self.level[c]}")
        sid = self._append(PAIR, b, c, level, self.explen[b] + self.explen[c])
        self._pairs[(b, c)] = sid
        return sid

    def intern_power(self, b: int, m: int, level: int) -> int:
        """Intern the power production ``b^m`` created at round ``level``."""
        sid = self._powers.get((b, m))
        if sid is not None:
            return sid
        self.check(b)
        if m < 2:
            raise BadExponentError(f"power exponent must be >= 2, got {m}")
        if level <= self.level[b]:
            raise BadLevelError(
                f"power level {level} not above base level {self.level[b]}")
        sid = self._append(POWER, b, m, level, m * self.explen[b])
        self._powers[(b, m)] = sid
        return sid

    def find_terminal(self, cp: int) -> int:
        sid = self._terminals.get(cp)
        if sid is None:
            raise UnknownSymbolError(f"no terminal for codepoint {cp}")
        return sid

    def find_pair(self, b: int, c: int) -> int:
        sid = self._pairs.get((b, c))
        if sid is None:
            raise UnknownSymbolError(f"no pair symbol for ({b}, {c})")
        return sid

    def find_power(self, b: int, m: int) -> int:
        sid = self._powers.get((b, m))
        if sid is None:
            raise UnknownSymbolError(f"no power symbol for ({b}, {m})")
        return sid


@dataclass(frozen=True)
class Grammar:
    """Immutable grammar: symbol table, start symbol, round count, seed.

    Safe for concurrent reads once built; queries never mutate it.
    """

    table: SymbolTable
    start: int
    rounds: int
    seed: int
    text_len: int

    def expand(self, sid: int) -> str:
        """Expansion string of a symbol.

        Output has length ``explen(sid)``; intended for tests and
        desk-scale use, not for large grammars.
        """
        t = self.table
        t.check(sid)

        def rec(s: int) -> str:
            k = t.kind[s]
            if k == TERMINAL:
                return chr(t.arg0[s])
            if k == POWER:
                return rec(t.arg0[s]) * t.arg1[s]
            return rec(t.arg0[s]) + rec(t.arg1[s])

        return rec(sid)

    @property
    def text(self) -> str:
        """The indexed text (desk-scale use only)."""
        return self.expand(self.start)
