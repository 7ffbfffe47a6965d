import random

import pytest

from toggle.engine import (apply_move, check_unplayability_monotone, find_replayable_after_touch,
                           game_dag_positions, is_playable, playable_by_count, playable_set,
                           replay, sigma)
from toggle.errors import BudgetExceeded, InputError, RuleViolation
from toggle.graphs import GamePosition, build_petersen, cycle, lattice2, lattice_index, path
from toggle.lattice import make_family
from toggle.petersen import make_petersen_position
from toggle.witnesses import (FIG1_MOVES, FIG2_MOVES, fig1_position, fig2_graph, fig2_position,
                              paths_and_cycles_sweep)
from conftest import random_graph


def test_sigma_examples():
    assert sigma(GamePosition.all_ones(path(3)), 1) == 3
    assert sigma(GamePosition.from_bits(path(3), [0, 0, 0]), 0) == 0
    h9 = make_family("H", 9)
    assert sigma(h9, lattice_index(9, 0, 2)) == 2
    with pytest.raises(InputError):
        sigma(h9, 18)


def test_playability_examples():
    p3 = GamePosition.all_ones(path(3))
    assert is_playable(p3, 1)
    assert not is_playable(GamePosition.from_bits(path(3), [0, 0, 1]), 2)
    assert playable_set(GamePosition.from_bits(cycle(5), [0] * 5)) == frozenset()
    with pytest.raises(InputError):
        is_playable(p3, -1)


def test_apply_move_examples():
    assert apply_move(GamePosition.all_ones(path(3)), 0).bitstring == "001"
    m = 9
    after = apply_move(GamePosition.all_ones(lattice2(m)), lattice_index(m, 0, 1))
    assert after.zeros == {lattice_index(m, 0, 1), lattice_index(m, 0, 2), lattice_index(m, 1, 1)}


def test_illegal_move_reports_sigmas():
    pos = GamePosition.from_bits(path(3), [0, 0, 1])
    with pytest.raises(RuleViolation) as info:
        apply_move(pos, 2)
    assert (info.value.vertex, info.value.sigma_before, info.value.sigma_after) == (2, 1, 1)
    with pytest.raises(RuleViolation) as info:
        replay(GamePosition.all_ones(path(3)), [1, 0])
    assert info.value.stage == 1


def test_replay_identity():
    pos = GamePosition.all_ones(path(4))
    trace = replay(pos, [])
    assert trace.positions == (pos,) and trace.moves == ()


def test_fig1_replay():
    trace = replay(fig1_position(), FIG1_MOVES)
    assert 4 in playable_set(trace.final)
    assert len(trace.positions) == len(trace.moves) + 1


def test_fig2_replay():
    g = fig2_graph()
    assert g.n == 14 and g.max_degree == 3
    trace = replay(fig2_position(), FIG2_MOVES)
    assert g.find_label("v") in playable_set(trace.final)


def test_monotone_examples():
    assert check_unplayability_monotone(make_petersen_position("P01", 7, 1)).monotone
    assert check_unplayability_monotone(make_petersen_position("P10", 8, 2)).monotone
    rep = check_unplayability_monotone(fig1_position())
    assert not rep.monotone
    moves, vertex = rep.witness
    assert len(moves) <= 3
    assert vertex in playable_set(replay(fig1_position(), moves).final)


def test_witnesses_found():
    for pos in (fig1_position(), fig2_position()):
        moves, vertex = find_replayable_after_touch(pos)
        final = replay(pos, moves).final
        assert vertex in playable_set(final)
        assert any(vertex in pos.graph.adj[mv] or vertex == mv for mv in moves)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        check_unplayability_monotone(GamePosition.all_ones(cycle(40)))
    with pytest.raises(BudgetExceeded):
        check_unplayability_monotone(GamePosition.all_ones(lattice2(8)), budget=10)


def test_legality_equivalence_random():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, rng.random())
        for _ in range(20):
            pos = GamePosition.from_bits(g, [rng.randint(0, 1) for _ in range(n)])
            for v in range(n):
                assert is_playable(pos, v) == playable_by_count(pos, v)


def test_descent_and_game_length():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 16)
        g = random_graph(rng, n, rng.random())
        pos = GamePosition.from_bits(g, [rng.randint(0, 1) for _ in range(n)])
        length = 0
        while True:
            moves = sorted(playable_set(pos))
            if not moves:
                break
            nxt = apply_move(pos, rng.choice(moves))
            assert nxt.total_weight < pos.total_weight
            pos = nxt
            length += 1
        assert length <= n


def test_prop21_paths_cycles():
    for kind, n, hit in paths_and_cycles_sweep(12):
        assert hit is None, (kind, n, hit)


def test_corollary_contiguous_block():
    for n in range(1, 13):
        for a in range(n):
            for b in range(a + 1, n + 1):
                bits = [1 if a <= i < b else 0 for i in range(n)]
                assert find_replayable_after_touch(GamePosition.from_bits(path(n), bits)) is None


def test_dag_positions_small():
    seen = game_dag_positions(GamePosition.all_ones(path(3)))
    assert seen == {0b111, 0b100, 0b001, 0b000}
