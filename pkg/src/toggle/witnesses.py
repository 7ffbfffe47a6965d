"""Small positions where history matters, and the penultimate-unplayability sweep.

Both figures start from a position with one weight-0 vertex; without that
zero the sweep below finds no such behaviour on graphs of maximum degree 3.
"""

from __future__ import annotations

from .engine import find_replayable_after_touch
from .graphs import GamePosition, Graph, connected_graphs, cycle, path
from .reports import ClaimReport

# P_8 with v_6 = 0; moves v_5, v_6, v_3 make v_5 playable again.
FIG1_MOVES = (4, 5, 2)

FIG2_LABELS = ("v", "u1", "u2", "u3", "w1", "w2", "w3", "w4", "w5", "w6", "d1", "d2", "d7", "d8")
FIG2_EDGES = (("v", "u1"), ("v", "u2"), ("v", "u3"), ("u1", "w1"), ("u1", "w2"), ("u2", "w3"),
              ("u2", "w4"), ("u3", "w5"), ("u3", "w6"), ("w1", "d1"), ("w1", "d2"),
              ("w4", "d7"), ("w4", "d8"))
# Moves v, u3, w1, w4 make v playable again.
FIG2_MOVES = (0, 3, 4, 7)


def fig1_position() -> GamePosition:
    return GamePosition.with_zeros(path(8), {5})


def fig2_graph() -> Graph:
    idx = {name: i for i, name in enumerate(FIG2_LABELS)}
    return Graph.from_edges(len(FIG2_LABELS), [(idx[a], idx[b]) for a, b in FIG2_EDGES],
                            FIG2_LABELS)


def fig2_position() -> GamePosition:
    g = fig2_graph()
    return GamePosition.with_zeros(g, {g.find_label("u3")})


def penultimate_sweep(n_max: int = 9, max_degree: int = 3, n_min: int = 1) -> ClaimReport:
    """Every connected graph with the degree bound, all weights 1: no vertex is
    playable after a move has been made in its closed neighbourhood."""
    report = ClaimReport("prop_penultimate", f"connected, max degree <= {max_degree}, "
                                             f"{n_min} <= n <= {n_max}, all ones")
    for n in range(n_min, n_max + 1):
        count = 0
        bad = None
        for g in connected_graphs(n, max_degree):
            count += 1
            hit = find_replayable_after_touch(GamePosition.all_ones(g))
            if hit is not None and bad is None:
                bad = (g.edges, hit)
        if bad is None:
            report.add(True, n=n, graphs=count)
        else:
            report.add(False, n=n, graphs=count, edges=list(bad[0]), moves=list(bad[1][0]),
                       vertex=bad[1][1])
    return report


def paths_and_cycles_sweep(n_max: int = 12) -> list[tuple[str, int, object]]:
    out = []
    for n in range(1, n_max + 1):
        out.append(("path", n, find_replayable_after_touch(GamePosition.all_ones(path(n)))))
        if n >= 3:
            out.append(("cycle", n, find_replayable_after_touch(GamePosition.all_ones(cycle(n)))))
    return out
