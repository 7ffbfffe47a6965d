"""Command-line entry point: ``toggle <subcommand> ...``.

Exit codes: 0 success, 1 a claim or cross-check failed, 2 bad input,
3 a resource budget ran out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path

from . import heaps, lattice, petersen, qbf
from .engine import playable_set, replay
from .errors import BudgetExceeded, InputError, RuleViolation
from .graphs import GamePosition, build_basic, parse_graph, serialize_graph
from .solver import Solver

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

PETERSEN_CLAIMS = petersen.CLAIMS
OTHER_CLAIMS = ("qbf_equivalence", "prop_penultimate", "lattice_oracle")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


@contextmanager
def _mapper(jobs: int):
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield lambda fn, items: pool.map(fn, list(items))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _emit(lines, out):
    for line in lines:
        out.write(line + "\n")


# -- subcommands -------------------------------------------------------------------

def cmd_nimber(args, out) -> int:
    solver = Solver()
    if args.graph:
        g, w = parse_graph(_read(args.graph))
        pos = GamePosition.from_bits(g, w) if w is not None else GamePosition.all_ones(g)
        value = solver.grundy(pos)
    elif args.family is None or args.m is None:
        raise InputError("nimber needs --graph FILE or --family F --m M")
    elif args.family == "petersen":
        if args.k is None:
            raise InputError("--family petersen needs --k")
        value = solver.grundy(petersen.make_petersen_position(args.variant or "allones", args.m, args.k))
    elif args.family in ("H", "D", "T"):
        value = lattice.grundy_family(lattice.LatticeFamilyId(args.family, args.m))
    else:
        if args.variant not in (None, "allones", "11"):
            raise InputError(f"--variant {args.variant} only applies to --family petersen")
        if args.family == "lattice2":
            value = lattice.grundy_grid_allones(args.m)
        else:
            value = solver.grundy(GamePosition.all_ones(build_basic(args.family, args.m)))
    if args.format == "json-lines":
        out.write(json.dumps({"nimber": value}) + "\n")
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    with _mapper(args.jobs) as mapper:
        rows = petersen.nimber_table(args.variant, args.m_range, args.k_range, mapper=mapper)
    if args.format == "csv":
        out.write(petersen.table_csv(rows))
    elif args.format == "json-lines":
        for tag, m, k, g in rows:
            out.write(json.dumps({"variant": tag, "m": m, "k": k, "nimber": g}, sort_keys=True) + "\n")
    else:
        for tag, m, k, g in rows:
            out.write(f"{tag} m={m} k={k} nimber={'unsolved' if g is None else g}\n")
    return EXIT_BUDGET if any(g is None for *_, g in rows) else EXIT_OK


def cmd_verify(args, out) -> int:
    with _mapper(args.jobs) as mapper:
        if args.claim in PETERSEN_CLAIMS:
            report = petersen.verify_claim(args.claim, m_max=args.m_max, m_min=args.m_min,
                                           ks=args.k, mapper=mapper)
        elif args.claim == "qbf_equivalence":
            report = qbf.verify_equivalence(samples=args.samples, seed=args.seed, mapper=mapper)
        elif args.claim == "prop_penultimate":
            from .witnesses import penultimate_sweep

            report = penultimate_sweep(n_max=args.n_max)
        else:
            report = _lattice_oracle(args.m_max)
    _emit(report.lines(args.format), out)
    if not report.holds:
        return EXIT_FAIL
    return EXIT_BUDGET if report.incomplete else EXIT_OK


def _lattice_oracle(m_max: int):
    from .reports import ClaimReport

    solver = Solver()
    report = ClaimReport("lattice_oracle", f"3 <= m <= {m_max}, fast route vs generic solver")
    for m in range(3, m_max + 1):
        for kind in lattice.KINDS:
            fast = lattice.grundy_family(lattice.LatticeFamilyId(kind, m))
            slow = solver.grundy(lattice.make_family(kind, m))
            report.add(fast == slow, kind=kind, m=m, fast=fast, oracle=slow)
    return report


def cmd_reduce(args, out) -> int:
    inst = qbf.parse_dimacs(_read(args.cnf))
    art = qbf.build_reduction(inst)
    text = serialize_graph(art.graph, art.position.bits)
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from None
    out.write(f"n={inst.n} m={inst.m} vertices={art.graph.n} edges={art.graph.edge_count}\n")
    for note in art.deviations:
        out.write(f"deviation: {note}\n")
    return EXIT_OK


def cmd_qbf_check(args, out) -> int:
    inst = qbf.parse_dimacs(_read(args.cnf))
    report = qbf.verify_equivalence(inst)
    _emit(report.lines(args.format), out)
    if not report.holds:
        return EXIT_FAIL
    return EXIT_BUDGET if report.incomplete else EXIT_OK


def cmd_oeis_check(args, out) -> int:
    base_url = args.oeis_base_url or os.environ.get("TOGGLE_OEIS_BASE_URL", "")
    if args.fetch:
        heaps.fetch_bfile(args.seq, base_url)
    ref = heaps.load_bfile(args.seq, args.bfile)
    if args.seq == "A071426":
        start = 0
        computed = heaps.octal_sequence(heaps.JL_CODE, args.count)
    else:
        start = 3
        solver = Solver()
        computed = [solver.grundy(petersen.make_petersen_position("P01", m, 1))
                    for m in range(start, start + args.count)]
    report = heaps.crosscheck(computed, ref.values, start - ref.offset, args.seq)
    lines = []
    if args.format == "json-lines":
        lines.append(json.dumps({"sequence": args.seq, "compared": report.compared,
                                 "mismatch": None if report.ok else start + report.mismatch,
                                 "computed": report.computed_value,
                                 "reference": report.reference_value}, sort_keys=True))
    else:
        if report.ok:
            lines.append(f"{args.seq}: {report.compared} terms match (from index {start})")
        else:
            lines.append(f"{args.seq}: mismatch at index {start + report.mismatch}: computed "
                         f"{report.computed_value}, reference {report.reference_value}")
    _emit(lines, out)
    if report.compared < args.count:
        out.write(f"warning: reference covers only {report.compared} of {args.count} terms\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_replay(args, out) -> int:
    g, w = parse_graph(_read(args.graph))
    pos = GamePosition.from_bits(g, w) if w is not None else GamePosition.all_ones(g)
    moves = _int_list(args.moves)
    try:
        trace = replay(pos, moves)
    except RuleViolation as exc:
        out.write(f"{exc}\n")
        return EXIT_FAIL
    for t, p in enumerate(trace.positions):
        move = "-" if t == 0 else str(trace.moves[t - 1])
        play = ",".join(map(str, sorted(playable_set(p)))) or "-"
        out.write(f"stage {t} move {move} weights {p.bitstring} playable {play}\n")
    return EXIT_OK


def cmd_jl(args, out) -> int:
    value = heaps.jl_grundy(args.m)
    out.write(f"{value}\n")
    return EXIT_OK


# -- wiring --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="toggle", description="Toggle game toolkit")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=("text", "json-lines")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("nimber", help="Nimber of one position")
    p.add_argument("--graph")
    p.add_argument("--family", choices=("path", "cycle", "lattice2", "petersen", "H", "D", "T"))
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--variant", choices=("01", "10", "11", "allones"))
    common(p)
    p.set_defaults(func=cmd_nimber)

    p = sub.add_parser("table", help="Petersen Nimber table")
    p.add_argument("--variant", required=True, choices=("01", "10", "11", "allones"))
    p.add_argument("--m-range", type=_range, required=True)
    p.add_argument("--k-range", type=_range, required=True)
    common(p, ("text", "csv", "json-lines"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check a theorem over a range")
    p.add_argument("--claim", required=True, choices=PETERSEN_CLAIMS + OTHER_CLAIMS)
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--m-min", type=int)
    p.add_argument("--k", type=_int_list)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    common(p, ("text", "csv", "json-lines"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="compile a 3-CNF file to a Toggle graph")
    p.add_argument("--cnf", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("qbf-check", help="QBF value vs Toggle winner for one file")
    p.add_argument("--cnf", required=True)
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.set_defaults(func=cmd_qbf_check)

    p = sub.add_parser("oeis-check", help="compare computed values with a b-file")
    p.add_argument("--seq", required=True, choices=heaps.SEQUENCES)
    p.add_argument("--bfile")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--fetch", action="store_true", help="download the b-file first")
    p.add_argument("--oeis-base-url", default="")
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.set_defaults(func=cmd_oeis_check)

    p = sub.add_parser("replay", help="apply a move sequence")
    p.add_argument("--graph", required=True)
    p.add_argument("--moves", required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("jl", help="Jacob's Ladder Nimber on the m-cycle")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_jl)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except InputError as exc:
        print(f"toggle: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"toggle: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"toggle: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
