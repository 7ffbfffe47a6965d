"""Acceptance criteria 1-7.  Each test prints one PASS/FAIL line."""

from __future__ import annotations

import random
import subprocess
import sys
import time

import pytest

from toggle.engine import apply_move, find_replayable_after_touch, legal_at, playable_set
from toggle.graphs import GamePosition, build_petersen, lattice2
from toggle.heaps import (JL_CODE, OctalCode, crosscheck, jl_grundy, jl_sum_grundy, load_bfile,
                          matching_offsets, octal_moves, octal_sequence, path_jl_moves,
                          transform_octal_to_p01)
from toggle.lattice import (grundy_D, grundy_grid_allones, grundy_H, grundy_Pm1_empty, grundy_T,
                            make_family)
from toggle.petersen import nimber_table, petersen_nimber, verify_claim
from toggle.qbf import (FIG8, QbfInstance, audit_sizes, build_reduction, expected_vertex_count,
                        parse_dimacs, random_instances, verify_equivalence)
from toggle.solver import Solver
from toggle.witnesses import fig1_position, fig2_position, penultimate_sweep
from conftest import random_graph


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail, started):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\nCRITERION {number}: {status} {detail} [{time.perf_counter() - started:.1f}s]")
        assert ok, detail
    return emit


def test_criterion_1_rule_invariants(report):
    t0 = time.perf_counter()
    rng = random.Random(101)
    problems = []
    for trial in range(1000):
        n = rng.randint(1, 16)
        g = random_graph(rng, n, rng.random())
        pos = GamePosition.from_bits(g, [rng.randint(0, 1) for _ in range(n)])
        length = 0
        while True:
            moves = sorted(playable_set(pos))
            if not moves:
                break
            nxt = apply_move(pos, rng.choice(moves))
            if nxt.total_weight >= pos.total_weight:
                problems.append(f"no descent in trial {trial}")
            pos = nxt
            length += 1
        if length > n:
            problems.append(f"game longer than |V| in trial {trial}")
    checked = 0
    for _ in range(200):
        n = rng.randint(1, 10)
        g = random_graph(rng, n, rng.random())
        degs = [g.degree(v) for v in range(n)]
        for w in range(1 << n):
            for v in range(n):
                k = sum((w >> u) & 1 for u in g.adj[v])
                by_count = bool((w >> v) & 1) and k >= -(-degs[v] // 2)
                if legal_at(g, w, v) != by_count:
                    problems.append(f"legality mismatch n={n} w={w} v={v}")
                checked += 1
    ok = not problems and time.perf_counter() - t0 < 60
    report(1, ok, f"1000 random plays, {checked} legality checks, problems={problems[:3]}", t0)


def test_criterion_2_penultimate(report):
    t0 = time.perf_counter()
    sweep = penultimate_sweep(9)
    graphs = sum(c["graphs"] for c in sweep.cases)
    fig1 = find_replayable_after_touch(fig1_position())
    fig2 = find_replayable_after_touch(fig2_position())
    ok = sweep.holds and fig1 is not None and fig2 is not None and time.perf_counter() - t0 < 300
    report(2, ok, f"{graphs} connected graphs (max degree 3, n<=9) never replay; "
                  f"fig1 witness {fig1}, fig2 witness {fig2}", t0)


def test_criterion_3_recurrences(report):
    t0 = time.perf_counter()
    oracle = Solver()
    bad = []
    for m in range(3, 13):
        for name, fast in (("H", grundy_H), ("D", grundy_D), ("T", grundy_T)):
            if fast(m) != oracle.grundy(make_family(name, m)):
                bad.append((name, m))
        if grundy_grid_allones(m) != oracle.grundy(GamePosition.all_ones(lattice2(m))):
            bad.append(("grid", m))
    for m in range(3, 9):
        if grundy_Pm1_empty(m) != oracle.grundy(GamePosition.all_ones(build_petersen(m, 1))):
            bad.append(("Pm1", m))
    # fresh interpreter so no table is warm
    code = ("import time; t=time.perf_counter(); "
            "from toggle.lattice import grundy_H, grundy_D, grundy_T, grundy_grid_allones; "
            "v=[f(5000) for f in (grundy_H, grundy_D, grundy_T, grundy_grid_allones)]; "
            "print(time.perf_counter()-t, *v)")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    elapsed, *values = out.stdout.split()
    ok = not bad and float(elapsed) < 10
    report(3, ok, f"oracle mismatches={bad}; m=5000 in {float(elapsed):.2f}s "
                  f"(H,D,T,grid = {','.join(values)})", t0)


def test_criterion_4_petersen_theorems(report):
    t0 = time.perf_counter()
    facts = {
        "P10(6,2)": petersen_nimber("P10", 6, 2),
        "P10(12,4)": petersen_nimber("P10", 12, 4),
        "P01(6,1)": petersen_nimber("P01", 6, 1),
        "P01(8,1)": petersen_nimber("P01", 8, 1),
    }
    bounds = verify_claim("thm_bounds", m_max=10)
    four = verify_claim("thm_four_equal", m_min=5, m_max=10)
    ok = (all(v == 0 for v in facts.values()) and bounds.holds and four.holds
          and not bounds.incomplete and not four.incomplete and time.perf_counter() - t0 < 600)
    report(4, ok, f"{facts}; bounds over {len(bounds.cases)} (m,k) cells {bounds.status}; "
                  f"four-way equality m=5..10 {four.status}", t0)


def test_criterion_5_octal_jl(report):
    t0 = time.perf_counter()
    code = OctalCode.parse(JL_CODE)
    structural = [n for n in range(1, 41) if path_jl_moves(n) != octal_moves(code, n)]
    ref = load_bfile("A071426")
    octal = crosscheck(octal_sequence(code, 101), ref.values, 0 - ref.offset, "A071426")
    transformed = transform_octal_to_p01(ref.values)
    p01 = {m: petersen_nimber("P01", m, 1) for m in range(3, 13)}
    offsets = matching_offsets(p01, transformed)
    jl_even = [k for k in range(3, 11) if jl_grundy(2 * k) != 0]
    jl_sum = [m for m in range(6, 17, 2) if jl_grundy(m) != jl_sum_grundy([m // 2, m // 2])]
    a361517 = load_bfile("A361517")
    rows = nimber_table("P01", range(3, 21), [1])
    table_bad = [m for _, m, _, g in rows if g != a361517.values[m - a361517.offset]]
    ok = (not structural and octal.ok and octal.compared == 101 and offsets == [8]
          and not jl_even and not jl_sum and not table_bad and time.perf_counter() - t0 < 120)
    report(5, ok, f"structural mismatches={structural}; {octal.line()}; transform offsets={offsets} "
                  f"(entry t <-> m=t+8); JL(2k)!=0 at k={jl_even}; JL sum mismatches={jl_sum}; "
                  f"A361517 table mismatches at m={table_bad}", t0)


def test_criterion_6_reduction(report):
    t0 = time.perf_counter()
    rng = random.Random(6)
    count_bad = []
    for n in range(1, 9):
        for m in range(1, 6):
            inst = QbfInstance(n, tuple(tuple((rng.randint(1, n), rng.random() < 0.5)
                                              for _ in range(3)) for _ in range(m)))
            if build_reduction(inst).graph.n != expected_vertex_count(n, m):
                count_bad.append((n, m))
    marginals = {audit_sizes(inst).clause_marginal for inst in random_instances(20, seed=61)}
    fig8 = build_reduction(parse_dimacs(FIG8))
    fig8_play = sorted(fig8.role(v) for v in playable_set(fig8.position))
    eq = verify_equivalence(samples=50, seed=0)
    names = {c["instance"] for c in eq.cases}
    forced = all(c["forced_after_variables"] for c in eq.cases)
    ok = (not count_bad and marginals == {(28, 43)} and fig8.graph.n == 56
          and fig8_play == ["v^0_1", "v^1_1"] and eq.holds and not eq.incomplete and forced
          and {"fig8", "fig9"} <= names and len(eq.cases) == 60 and time.perf_counter() - t0 < 600)
    report(6, ok, f"count mismatches={count_bad}; clause marginals={sorted(marginals)}; "
                  f"fig8 |V|={fig8.graph.n} playable={fig8_play}; equivalence {eq.status} on "
                  f"{len(eq.cases)} instances; forced-move {forced}", t0)


DETERMINISM_COMMANDS = [
    ["verify", "--claim", "thm_3k_even", "--format", "json-lines"],
    ["verify", "--claim", "thm_bounds", "--m-max", "10", "--format", "json-lines"],
    ["verify", "--claim", "cor_isomorphism", "--format", "json-lines"],
    ["verify", "--claim", "thm_four_equal", "--m-max", "10", "--format", "json-lines"],
    ["verify", "--claim", "thm_even_cycle_zero", "--format", "json-lines"],
    ["verify", "--claim", "qbf_equivalence", "--samples", "50", "--seed", "0", "--format", "json-lines"],
    ["verify", "--claim", "lattice_oracle", "--format", "json-lines"],
    ["verify", "--claim", "prop_penultimate", "--n-max", "8"],
    ["table", "--variant", "01", "--m-range", "3..20", "--k-range", "1..2", "--format", "csv"],
    ["oeis-check", "--seq", "A071426", "--count", "101"],
    ["oeis-check", "--seq", "A361517", "--count", "18"],
]


def _run_all(jobs: int) -> bytes:
    chunks = []
    for argv in DETERMINISM_COMMANDS:
        extra = ["--jobs", str(jobs)] if argv[0] in ("verify", "table") else []
        res = subprocess.run([sys.executable, "-m", "toggle.cli", *argv, *extra],
                             capture_output=True, check=False)
        chunks.append(b"$ " + " ".join(argv).encode() + b"\n" + res.stdout
                      + f"exit {res.returncode}\n".encode())
    return b"".join(chunks)


def test_criterion_7_determinism(report):
    t0 = time.perf_counter()
    first = _run_all(1)
    second = _run_all(1)
    parallel = _run_all(8)
    exits_ok = first.count(b"exit 0\n") == len(DETERMINISM_COMMANDS)
    ok = first == second == parallel and exits_ok
    report(7, ok, f"{len(DETERMINISM_COMMANDS)} reports, {len(first)} bytes; "
                  f"run1==run2: {first == second}; jobs1==jobs8: {first == parallel}; "
                  f"all exit 0: {exits_ok}", t0)
