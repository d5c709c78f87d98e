"""Pointer navigation over the implicit parse tree.

The parse tree is never materialized.  A node handle stores its text
position, its symbol, and a shared immutable reference to its parent
handle, so a handle doubles as a persistent stack of ancestors: two
descents from one node share the ancestor chain and never interfere.

The uncompressed view subdivides edges so that each character of each
level string is a distinct node, addressed as (handle, level).  Chains of
forward moves (u_next with u_parent/u_child) cost O(r + chain length)
overall; mixing u_prev and u_next in one chain voids that bound.

Every primitive operation bumps the navigator's step counter, which the
complexity tests read back per query.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OutOfRangeError
from .grammar import PAIR, POWER, TERMINAL, Grammar


class Node:
    """Handle to a parse-tree node: (pos, sym, parent reference)."""

    __slots__ = ("pos", "sym", "parent")

    def __init__(self, pos: int, sym: int, parent: "Node | None" = None):
        self.pos = pos
        self.sym = sym
        self.parent = parent

    # Handle equality is (pos, sym): with a fixed grammar those two values
    # determine the tree node.
    def __eq__(self, other) -> bool:
        return isinstance(other, Node) and self.pos == other.pos and self.sym == other.sym

    def __hash__(self) -> int:
        return hash((self.pos, self.sym))

    def __repr__(self) -> str:
        return f"Node(pos={self.pos}, sym={self.sym})"


@dataclass(frozen=True)
class UNode:
    """Node of the uncompressed parse tree: a parse-tree handle plus a level."""
    node: Node
    level: int


class Navigator:
    """Stateless navigation methods over one grammar, plus a step counter."""

    __slots__ = ("g", "t", "steps")

    def __init__(self, g: Grammar):
        self.g = g
        self.t = g.table
        self.steps = 0

    def root(self) -> Node:
        return Node(0, self.g.start, None)

    def arity(self, node: Node) -> int:
        t = self.t
        k = t.kind[node.sym]
        if k == TERMINAL:
            return 0
        if k == PAIR:
            return 2
        return t.arg1[node.sym]

    def child(self, node: Node, i: int) -> Node | None:
        """The i-th child, or None when out of bounds or at a leaf."""
        self.steps += 1
        t = self.t
        s = node.sym
        k = t.kind[s]
        if k == PAIR:
            if i == 0:
                return Node(node.pos, t.arg0[s], node)
            if i == 1:
                return Node(node.pos + t.explen[t.arg0[s]], t.arg1[s], node)
            return None
        if k == POWER:
            if 0 <= i < t.arg1[s]:
                b = t.arg0[s]
                return Node(node.pos + i * t.explen[b], b, node)
            return None
        return None

    def index_of(self, node: Node, j: int) -> int:
        """Index of the unique child whose fragment contains text position ``j``."""
        self.steps += 1
        t = self.t
        s = node.sym
        if not (node.pos <= j < node.pos + t.explen[s]):
            raise OutOfRangeError(
                f"position {j} outside node fragment "
                f"[{node.pos}, {node.pos + t.explen[s]})")
        k = t.kind[s]
        if k == PAIR:
            return 0 if j < node.pos + t.explen[t.arg0[s]] else 1
        if k == POWER:
            return (j - node.pos) // t.explen[t.arg0[s]]
        raise OutOfRangeError("terminal node has no children")

    def sibling(self, node: Node, d: int) -> Node | None:
        """The d-th sibling (d may be negative); None if out of bounds or at the root."""
        p = node.parent
        if p is None:
            return None
        return self.child(p, d + self.index_of(p, node.pos))

    def leaf(self, j: int) -> Node:
        """Terminal node covering text position ``j``, with full ancestor stack."""
        if not (0 <= j < self.g.text_len):
            raise OutOfRangeError(f"position {j} outside [0, {self.g.text_len})")
        t = self.t
        node = self.root()
        while t.explen[node.sym] > 1:
            node = self.child(node, self.index_of(node, j))
        return node

    # -- uncompressed parse tree -------------------------------------------

    def u_parent(self, un: UNode) -> UNode:
        """Level k+1 node above ``un``; stays on the same parse node when the
        edge is subdivided (the parent symbol was created above level k+1)."""
        self.steps += 1
        node, k = un.node, un.level
        p = node.parent
        if p is not None and self.t.level[p.sym] == k + 1:
            return UNode(p, k + 1)
        return UNode(node, k + 1)

    def u_child(self, un: UNode, i: int) -> UNode | None:
        node, k = un.node, un.level
        lv = self.t.level[node.sym]
        if k > lv:
            self.steps += 1
            return UNode(node, k - 1) if i == 0 else None
        if k == lv and k > 0:
            c = self.child(node, i)
            return UNode(c, k - 1) if c is not None else None
        self.steps += 1
        return None

    def _u_step(self, un: UNode, forward: bool) -> UNode | None:
        t = self.t
        k = un.level
        node = un.node
        # climb until a sibling in the move direction exists
        while True:
            p = node.parent
            if p is None:
                return None
            idx = self.index_of(p, node.pos)
            if forward:
                if idx + 1 < self.arity(p):
                    node = self.child(p, idx + 1)
                    break
            else:
                if idx > 0:
                    node = self.child(p, idx - 1)
                    break
            node = p
            self.steps += 1
        # descend along the first/last child until the symbol lives at level <= k
        while t.level[node.sym] > k:
            node = self.child(node, 0 if forward else self.arity(node) - 1)
        return UNode(node, k)

    def u_next(self, un: UNode) -> UNode | None:
        """Node representing the next character of the same level string."""
        return self._u_step(un, True)

    def u_prev(self, un: UNode) -> UNode | None:
        """Node representing the previous character of the same level string."""
        return self._u_step(un, False)
