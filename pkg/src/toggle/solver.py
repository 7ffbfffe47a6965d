"""Generic Sprague-Grundy evaluation of Toggle positions.

Positions are memoized per connected component: the key is the component's
structure (adjacency after renumbering its vertices 0.. in ascending original
order) together with its packed weights.  Disconnected graphs are solved as
the XOR of their components.  Successors are always visited in ascending
vertex order, so results and memo statistics are reproducible.
"""

from __future__ import annotations

import enum
import os
import sys
from typing import Iterable

from .errors import BudgetExceeded
from .graphs import GamePosition, Graph

DEFAULT_MEMO_LIMIT = 1 << 24


def mex(values: Iterable[int]) -> int:
    present = set(values)
    g = 0
    while g in present:
        g += 1
    return g


def _mex_mask(seen: int) -> int:
    return (~seen & (seen + 1)).bit_length() - 1


class Winner(enum.Enum):
    NEXT = "NextPlayer"
    PREVIOUS = "PreviousPlayer"

    def __str__(self):
        return self.value


def memo_limit_from_env() -> int:
    raw = os.environ.get("TOGGLE_MEMO_LIMIT")
    return int(raw) if raw else DEFAULT_MEMO_LIMIT


class Solver:
    """Memoized Grundy-value search.

    ``decompose=False`` disables the component XOR shortcut; it exists so the
    union law can be tested against a solver that does not assume it.
    """

    def __init__(self, memo_limit: int | None = None, decompose: bool = True):
        self.memo_limit = memo_limit_from_env() if memo_limit is None else memo_limit
        self.decompose = decompose
        self._tables: dict[tuple, dict[int, int]] = {}
        self._components: dict[Graph, list[tuple[Graph, tuple[int, ...]]]] = {}
        self.hits = 0
        self.misses = 0

    @property
    def size(self) -> int:
        return sum(len(t) for t in self._tables.values())

    def stats(self) -> dict[str, int]:
        return {"hits": self.hits, "misses": self.misses, "size": self.size}

    def _split(self, graph: Graph):
        parts = self._components.get(graph)
        if parts is None:
            if self.decompose and len(graph.components) > 1:
                parts = [(graph.induced(c), c) for c in graph.components]
            else:
                parts = [(graph, tuple(range(graph.n)))]
            self._components[graph] = parts
        return parts

    def grundy(self, pos: GamePosition) -> int:
        total = 0
        for sub, verts in self._split(pos.graph):
            if len(verts) == pos.graph.n:
                w = pos.weights
            else:
                w = 0
                for i, v in enumerate(verts):
                    if (pos.weights >> v) & 1:
                        w |= 1 << i
            if w:
                total ^= self._solve(sub, w)
        return total

    def _solve(self, graph: Graph, weights: int) -> int:
        table = self._tables.setdefault(graph.structure_key, {})
        hit = table.get(weights)
        if hit is not None:
            self.hits += 1
            return hit
        masks = graph.closed_masks
        sizes = [m.bit_count() for m in masks]
        limit = self.memo_limit
        base = self.size - len(table)
        if sys.getrecursionlimit() < graph.n + 200:
            sys.setrecursionlimit(graph.n + 200)

        def rec(w: int) -> int:
            g = table.get(w)
            if g is not None:
                self.hits += 1
                return g
            seen = 0
            x = w
            while x:
                low = x & -x
                x ^= low
                v = low.bit_length() - 1
                m = masks[v]
                if 2 * (w & m).bit_count() > sizes[v]:
                    seen |= 1 << rec(w ^ m)
            g = _mex_mask(seen)
            table[w] = g
            self.misses += 1
            if base + len(table) > limit:
                raise BudgetExceeded("memo table over budget", self.stats())
            return g

        return rec(weights)

    def winner(self, pos: GamePosition) -> Winner:
        return Winner.NEXT if self.grundy(pos) > 0 else Winner.PREVIOUS

    def best_move(self, pos: GamePosition) -> int | None:
        """Lowest-index move to a zero position, or None from a zero position."""
        if self.grundy(pos) == 0:
            return None
        masks = pos.graph.closed_masks
        for v in range(pos.graph.n):
            if _legal(pos, v) and self.grundy(GamePosition(pos.graph, pos.weights ^ masks[v])) == 0:
                return v
        raise AssertionError("non-zero position without a move to zero")


def _legal(pos: GamePosition, v: int) -> bool:
    if not (pos.weights >> v) & 1:
        return False
    m = pos.graph.closed_masks[v]
    return 2 * (pos.weights & m).bit_count() > m.bit_count()


def grundy(pos: GamePosition, solver: Solver | None = None) -> int:
    return (solver or Solver()).grundy(pos)


def winner(pos: GamePosition, solver: Solver | None = None) -> Winner:
    return (solver or Solver()).winner(pos)


def best_move(pos: GamePosition, solver: Solver | None = None) -> int | None:
    return (solver or Solver()).best_move(pos)
