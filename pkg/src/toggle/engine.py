"""The Toggle move rule and exhaustive play-DAG utilities.

A move at a weight-1 vertex v flips every weight in N[v] and is legal only
if the closed-neighbourhood sum sigma(v) strictly decreases.  Since flipping
N[v] sends sigma(v) to |N[v]| - sigma(v), legality is ``2*sigma(v) > |N[v]|``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, InputError, RuleViolation
from .graphs import GamePosition, Graph

DEFAULT_STATE_BUDGET = 5_000_000


def _check_vertex(graph: Graph, v: int) -> None:
    if not 0 <= v < graph.n:
        raise InputError(f"vertex {v} out of range for {graph.n} vertices")


def sigma(pos: GamePosition, v: int) -> int:
    _check_vertex(pos.graph, v)
    return (pos.weights & pos.graph.closed_masks[v]).bit_count()


def legal_at(graph: Graph, weights: int, v: int) -> bool:
    """Unchecked fast legality test on packed weights."""
    if not (weights >> v) & 1:
        return False
    mask = graph.closed_masks[v]
    return 2 * (weights & mask).bit_count() > mask.bit_count()


def playable_mask(graph: Graph, weights: int) -> int:
    out = 0
    masks = graph.closed_masks
    w = weights
    while w:
        low = w & -w
        v = low.bit_length() - 1
        mask = masks[v]
        if 2 * (weights & mask).bit_count() > mask.bit_count():
            out |= low
        w ^= low
    return out


def is_playable(pos: GamePosition, v: int) -> bool:
    _check_vertex(pos.graph, v)
    result = legal_at(pos.graph, pos.weights, v)
    # Equivalent count form: with w(v)=1, need k >= ceil(deg/2) lit neighbours.
    if (pos.weights >> v) & 1:
        k = sigma(pos, v) - 1
        assert result == (k >= -(-pos.graph.degree(v) // 2))
    return result


def playable_by_count(pos: GamePosition, v: int) -> bool:
    """Legality via the neighbour-count formulation (used as a cross-check)."""
    _check_vertex(pos.graph, v)
    if not (pos.weights >> v) & 1:
        return False
    k = sum((pos.weights >> u) & 1 for u in pos.graph.adj[v])
    return k >= -(-pos.graph.degree(v) // 2)


def playable_set(pos: GamePosition) -> frozenset[int]:
    m = playable_mask(pos.graph, pos.weights)
    return frozenset(v for v in range(pos.graph.n) if (m >> v) & 1)


def apply_move(pos: GamePosition, v: int, stage: int | None = None) -> GamePosition:
    _check_vertex(pos.graph, v)
    if not legal_at(pos.graph, pos.weights, v):
        before = sigma(pos, v)
        after = pos.graph.closed_masks[v].bit_count() - before
        raise RuleViolation(v, before, after, stage)
    return GamePosition(pos.graph, pos.weights ^ pos.graph.closed_masks[v])


@dataclass(frozen=True)
class MoveTrace:
    positions: tuple[GamePosition, ...]
    moves: tuple[int, ...]

    @property
    def final(self) -> GamePosition:
        return self.positions[-1]


def replay(pos: GamePosition, moves: Sequence[int]) -> MoveTrace:
    """Apply ``moves`` in order; the first illegal one raises with its stage."""
    positions = [pos]
    for stage, v in enumerate(moves):
        positions.append(apply_move(positions[-1], v, stage=stage))
    return MoveTrace(tuple(positions), tuple(moves))


@dataclass(frozen=True)
class PlayabilityReport:
    monotone: bool
    witness: tuple[tuple[int, ...], int] | None = None
    states: int = 0

    def __post_init__(self):
        assert (self.witness is None) == self.monotone


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _search(pos: GamePosition, init_aux, step_aux, max_depth, budget):
    """Breadth-first walk over (weights, aux) states of the play DAG.

    ``step_aux(aux, weights_after, move)`` returns the new aux.  A state is a
    violation when some playable vertex lies in ``aux``.  Returns the first
    violation found as (moves, vertex), shortest first, or None.
    """
    graph = pos.graph
    if budget is None:
        if graph.n > 32:
            raise BudgetExceeded(f"exhaustive search on {graph.n} vertices needs an explicit budget")
        budget = DEFAULT_STATE_BUDGET
    start = (pos.weights, init_aux)
    parent = {start: None}
    queue = deque([(start, 0)])
    masks = graph.closed_masks
    while queue:
        state, depth = queue.popleft()
        w, aux = state
        play = playable_mask(graph, w)
        bad = play & aux
        if bad:
            moves = []
            s = state
            while parent[s] is not None:
                s, mv = parent[s]
                moves.append(mv)
            return tuple(reversed(moves)), (bad & -bad).bit_length() - 1, len(parent)
        if max_depth is not None and depth >= max_depth:
            continue
        for v in _bits(play):
            w2 = w ^ masks[v]
            nxt = (w2, step_aux(aux, w2, v))
            if nxt not in parent:
                parent[nxt] = (state, v)
                if len(parent) > budget:
                    raise BudgetExceeded("play-DAG enumeration over budget",
                                         {"states": len(parent), "budget": budget})
                queue.append((nxt, depth + 1))
    return None, None, len(parent)


def check_unplayability_monotone(pos: GamePosition, max_depth: int | None = None,
                                 budget: int | None = None) -> PlayabilityReport:
    """Check that no vertex ever becomes playable again after being unplayable.

    Stage 0 counts: a vertex unplayable in ``pos`` itself must stay so.
    """
    graph = pos.graph
    full = (1 << graph.n) - 1

    def step(aux, w2, _v):
        return aux | (full & ~playable_mask(graph, w2))

    init = full & ~playable_mask(graph, pos.weights)
    moves, vertex, states = _search(pos, init, step, max_depth, budget)
    if moves is None:
        return PlayabilityReport(True, None, states)
    return PlayabilityReport(False, (moves, vertex), states)


def find_replayable_after_touch(pos: GamePosition, max_depth: int | None = None,
                                budget: int | None = None):
    """Look for a vertex that is playable after some move in its closed
    neighbourhood has already happened.

    Returns ``(moves, vertex)`` or None.  A None result means every vertex is
    terminally unplayable after at most one move in N[v].
    """
    masks = pos.graph.closed_masks

    def step(aux, _w2, v):
        return aux | masks[v]

    moves, vertex, _ = _search(pos, 0, step, max_depth, budget)
    return None if moves is None else (moves, vertex)


def game_dag_positions(pos: GamePosition, budget: int | None = None):
    """Every position reachable from ``pos`` (including it), as packed weights."""
    graph = pos.graph
    if budget is None:
        budget = DEFAULT_STATE_BUDGET
    seen = {pos.weights}
    stack = [pos.weights]
    masks = graph.closed_masks
    while stack:
        w = stack.pop()
        for v in _bits(playable_mask(graph, w)):
            w2 = w ^ masks[v]
            if w2 not in seen:
                seen.add(w2)
                if len(seen) > budget:
                    raise BudgetExceeded("reachable-position enumeration over budget",
                                         {"states": len(seen)})
                stack.append(w2)
    return seen
