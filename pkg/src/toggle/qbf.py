"""Quantified 3-CNF input, brute-force evaluation, and the Toggle gadget graph.

Variables are quantified in index order, alternating and starting with
"exists": player 1 picks beta_1, player 2 picks beta_2, and so on.  The
gadget graph G has a weight assignment under which the first Toggle player
wins exactly when the formula is true.

Vertex roles (labels in the emitted graph file):

* ``v^0_j`` / ``v^1_j``: variable vertices; playing one sets beta_j
  false / true.
* ``c^1_j``: orders the variable moves.  ``c^2_i``: clause controller.
* ``chi_i``: clause vertex.  ``sigma^1_i`` / ``sigma^2_i``: signal vertices.
* ``lambda_*``: link vertices between the variable and clause phases.
* ``d^t_i``: dummies; ``EndGame`` hangs off the last clause vertex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import BudgetExceeded, ConstructionError, InputError
from .graphs import GamePosition, Graph
from .engine import playable_mask
from .reports import ClaimReport
from .solver import Solver

Literal = tuple[int, bool]  # (variable, positive)


@dataclass(frozen=True)
class QbfInstance:
    n: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"need at least one variable, got n={self.n}")
        fixed = []
        for c in self.clauses:
            if len(c) != 3:
                raise InputError(f"clause {c} needs exactly 3 literals")
            for var, _ in c:
                if not 1 <= var <= self.n:
                    raise InputError(f"variable {var} out of range 1..{self.n}")
            fixed.append(tuple(sorted(((int(v), bool(p)) for v, p in c), key=lambda lit: lit[0])))
        object.__setattr__(self, "clauses", tuple(fixed))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @classmethod
    def from_ints(cls, n: int, clauses) -> "QbfInstance":
        return cls(n, tuple(tuple((abs(x), x > 0) for x in c) for c in clauses))

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        for c in self.clauses:
            lines.append(" ".join(str(v if p else -v) for v, p in c) + " 0")
        return "\n".join(lines) + "\n"

    def with_clause(self, clause) -> "QbfInstance":
        return QbfInstance(self.n, self.clauses + (tuple(clause),))

    def with_variable(self) -> "QbfInstance":
        return QbfInstance(self.n + 1, self.clauses)


def parse_dimacs(text: str) -> QbfInstance:
    n = m = None
    clauses = []
    prefix: list[tuple[str, int]] = []
    prefix_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise InputError("duplicate problem line", line=lineno)
            if len(tok) != 4 or tok[1] != "cnf":
                raise InputError(f"expected 'p cnf <n> <m>', got {raw.strip()!r}", line=lineno)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise InputError("non-integer in problem line", line=lineno) from None
            if n < 1 or m < 0:
                raise InputError(f"bad sizes n={n} m={m}", line=lineno)
            continue
        if n is None:
            raise InputError("clause or prefix before the 'p cnf' line", line=lineno)
        if tok[0] in ("e", "a"):
            if clauses:
                raise InputError("quantifier line after clauses", line=lineno)
            nums = _ints(tok[1:], lineno)
            if not nums or nums[-1] != 0:
                raise InputError("quantifier line must end with 0", line=lineno)
            prefix.extend((tok[0], v) for v in nums[:-1])
            prefix_line = prefix_line or lineno
            continue
        nums = _ints(tok, lineno)
        if nums[-1] != 0:
            raise InputError("clause must end with 0", line=lineno)
        lits = nums[:-1]
        if len(lits) != 3:
            raise InputError(f"clause needs exactly 3 literals, got {len(lits)}", line=lineno)
        for x in lits:
            if x == 0 or abs(x) > n:
                raise InputError(f"literal {x} out of range for n={n}", line=lineno)
        clauses.append(lits)
    if n is None:
        raise InputError("missing 'p cnf' line")
    if len(clauses) != m:
        raise InputError(f"header declares {m} clauses, found {len(clauses)}")
    if prefix:
        expected = [("e" if j % 2 else "a", j) for j in range(1, n + 1)]
        if prefix != expected:
            raise InputError("quantifier prefix must alternate e/a over variables 1..n starting with e",
                             line=prefix_line)
    return QbfInstance.from_ints(n, clauses)


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"non-integer token in {' '.join(tokens)!r}", line=lineno) from None


MAX_EVAL_VARIABLES = 24


def evaluate_qbf(inst: QbfInstance) -> bool:
    """Truth of exists b1 forall b2 exists b3 ... : phi, by game-tree search."""
    if inst.n > MAX_EVAL_VARIABLES:
        raise BudgetExceeded(f"brute-force evaluation is limited to n <= {MAX_EVAL_VARIABLES}",
                             {"n": inst.n})
    # A clause is decided once its largest variable is set.
    by_last: dict[int, list] = {}
    for c in inst.clauses:
        by_last.setdefault(c[-1][0], []).append(c)

    def rec(j: int, assign: list[bool]) -> bool:
        if j > inst.n:
            return True
        results = []
        for value in (False, True):
            assign.append(value)
            ok = all(any(assign[v - 1] == p for v, p in c) for c in by_last.get(j, ()))
            r = ok and rec(j + 1, assign)
            assign.pop()
            if j % 2 == 1 and r:
                return True
            if j % 2 == 0 and not r:
                return False
            results.append(r)
        return j % 2 == 0

    return rec(1, [])


# -- occurrences -------------------------------------------------------------------

@dataclass(frozen=True)
class Occurrence:
    variable: int
    clause: int  # 1-based
    slot: int    # 1..3 within the clause
    positive: bool


class OccurrenceIndex:
    """The multisets C0 (negated) and C1 (plain) of (variable, clause) pairs."""

    def __init__(self, inst: QbfInstance):
        self.inst = inst
        occ = []
        for j, clause in enumerate(inst.clauses, start=1):
            for slot, (v, p) in enumerate(clause, start=1):
                occ.append(Occurrence(v, j, slot, p))
        self.cstar = tuple(occ)
        self.c0 = tuple(o for o in occ if not o.positive)
        self.c1 = tuple(o for o in occ if o.positive)

    def y1(self, o: Occurrence) -> int:
        return 3 * o.clause - 3 + o.slot

    def y2(self, var: int) -> tuple[Occurrence, ...]:
        return tuple(o for o in self.cstar if o.variable == var)

    def count0(self, z: int) -> int:
        """|C0(z)|: negated occurrences of variables with index < z."""
        return sum(1 for o in self.c0 if o.variable < z)

    def count1(self, z: int) -> int:
        return sum(1 for o in self.c1 if o.variable < z)

    def count_star(self, z: int) -> int:
        return self.count0(z) + self.count1(z)


# -- the gadget graph ----------------------------------------------------------------

def expected_vertex_count(n: int, m: int) -> int:
    return 4 * n + 28 * m + 9 + (7 if n % 2 else 0)


@dataclass
class ReductionArtifact:
    instance: QbfInstance
    graph: Graph
    weights: int
    index_of_role: dict[str, int]
    deviations: tuple[str, ...] = ()

    @cached_property
    def position(self) -> GamePosition:
        return GamePosition(self.graph, self.weights)

    def role(self, v: int) -> str:
        return self.graph.labels[v]

    def __getitem__(self, role: str) -> int:
        return self.index_of_role[role]


DEVIATIONS = (
    "edge (c^2_j, sigma^2_{3i-1}) read as (c^2_i, sigma^2_{3i-1})",
    "initial weight-1 dummies d^3_i taken for 1 <= i <= 3m (all of them)",
)


class _Builder:
    def __init__(self):
        self.labels: list[str] = []
        self.index: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.edge_set: set[tuple[int, int]] = set()

    def add(self, label: str) -> int:
        if label in self.index:
            raise ConstructionError(f"vertex {label} defined twice")
        self.index[label] = len(self.labels)
        self.labels.append(label)
        return self.index[label]

    def edge(self, a: str, b: str, family: str) -> None:
        u, v = self.index[a], self.index[b]
        key = (min(u, v), max(u, v))
        if u == v or key in self.edge_set:
            raise ConstructionError(f"{family}: edge {a}-{b} is a loop or repeated")
        self.edge_set.add(key)
        self.edges.append(key)


def build_reduction(inst: QbfInstance) -> ReductionArtifact:
    n, m = inst.n, inst.m
    if m < 1:
        raise InputError("the reduction needs at least one clause")
    occ = OccurrenceIndex(inst)
    b = _Builder()
    for j in range(1, n + 1):
        for name in ("v^0", "v^1", "c^1", "d^5"):
            b.add(f"{name}_{j}")
    for i in range(1, m + 1):
        for name in ("chi", "c^2", "d^6", "d^7", "d^13"):
            b.add(f"{name}_{i}")
    for i in range(1, 2 * m + 1):
        b.add(f"d^4_{i}")
        b.add(f"d^14_{i}")
    for i in range(1, 3 * m + 1):
        for name in ("d^3", "sigma^1", "sigma^2"):
            b.add(f"{name}_{i}")
    for i in range(1, 6 * m + 1):
        b.add(f"d^2_{i}")
    for i in range(1, 4 * m + 1):
        b.add(f"d^8_{i}")
    for name in ("d^11_1", "d^12_1", "d^12_2", "d^1_1", "d^1_2", "d^1_3", "lambda_1", "lambda_2"):
        b.add(name)
    odd = n % 2 == 1
    if odd:
        for name in ("lambda_3", "d^9_1", "d^9_2", "d^10_1", "d^10_2", "d^10_3", "d^10_4"):
            b.add(name)
    b.add("EndGame")

    # R(G): link, tree, and clause machinery
    for a, c in ((f"v^0_{n}", "lambda_1"), (f"v^1_{n}", "lambda_1"), ("lambda_1", "lambda_2"),
                 ("lambda_2", "d^11_1"), ("d^11_1", "d^12_1"), ("d^11_1", "d^12_2")):
        b.edge(a, c, "R/link")
    if odd:
        for a, c in (("lambda_2", "lambda_3"), ("lambda_3", "d^9_1"), ("lambda_3", "d^9_2"),
                     ("d^9_1", "d^10_1"), ("d^9_1", "d^10_2"), ("d^9_2", "d^10_3"),
                     ("d^9_2", "d^10_4"), ("lambda_3", "c^2_1")):
            b.edge(a, c, "Tree_E")
    else:
        b.edge("lambda_2", "c^2_1", "Tree_E")
    for i in range(1, m + 1):
        d8 = [f"d^8_{4 * i - t}" for t in (3, 2, 1, 0)]
        s1 = [f"sigma^1_{3 * i - t}" for t in (2, 1, 0)]
        s2 = [f"sigma^2_{3 * i - t}" for t in (2, 1, 0)]
        for x in d8:
            b.edge(f"c^2_{i}", x, "R/c2-d8")
        for x in d8:
            b.edge(f"d^4_{2 * i - 1}", x, "R/d4-d8")
            b.edge(f"d^4_{2 * i}", x, "R/d4-d8")
        for x in s2:
            b.edge(f"c^2_{i}", x, "R/c2-sigma2")
            b.edge(f"d^6_{i}", x, "R/d6-sigma2")
            b.edge(f"chi_{i}", x, "R/chi-sigma2")
        for x in s1:
            b.edge(f"d^7_{i}", x, "R/d7-sigma1")
            b.edge(f"chi_{i}", x, "R/chi-sigma1")
        if i < m:
            b.edge(f"chi_{i}", f"c^2_{i + 1}", "R/chain")
        b.edge(f"chi_{i}", f"d^13_{i}", "R/chi-d13")
        b.edge(f"d^13_{i}", f"d^14_{2 * i - 1}", "R/d13-d14")
        b.edge(f"d^13_{i}", f"d^14_{2 * i}", "R/d13-d14")
    b.edge(f"chi_{m}", "EndGame", "R/endgame")

    # B(G): variable chain and its dummies
    for t in (1, 2, 3):
        b.edge("c^1_1", f"d^1_{t}", "B/c1-d1")
    for j in range(1, n + 1):
        b.edge(f"c^1_{j}", f"v^0_{j}", "B/chain")
        b.edge(f"c^1_{j}", f"v^1_{j}", "B/chain")
        b.edge(f"c^1_{j}", f"d^5_{j}", "B/chain")
        b.edge(f"v^0_{j}", f"v^1_{j}", "B/chain")
        if j < n:
            b.edge(f"v^0_{j}", f"c^1_{j + 1}", "B/chain")
            b.edge(f"v^1_{j}", f"c^1_{j + 1}", "B/chain")
    d3_hits = [0] * (3 * m + 1)
    d3_of: dict[str, list[int]] = {}
    for j in range(1, n + 1):
        base = occ.count_star(j)
        neg = occ.count0(j + 1) - occ.count0(j)
        pos = occ.count1(j + 1) - occ.count1(j)
        for side, start, count in (("v^0", base, neg), ("v^1", base + neg, pos)):
            for t in range(1, count + 1):
                idx = start + t
                if not 1 <= idx <= 3 * m:
                    raise ConstructionError(f"B/v-d3: index {idx} outside 1..{3 * m}")
                d3_hits[idx] += 1
                b.edge(f"{side}_{j}", f"d^3_{idx}", "B/v-d3")
                d3_of.setdefault(f"{side}_{j}", []).append(idx)
    if any(h != 1 for h in d3_hits[1:]):
        raise ConstructionError(f"B/v-d3: hit counts {d3_hits[1:]} are not all 1")
    for i in range(1, 3 * m + 1):
        b.edge(f"d^3_{i}", f"d^2_{2 * i - 1}", "B/d3-d2")
        b.edge(f"d^3_{i}", f"d^2_{2 * i}", "B/d3-d2")

    # P(G): occurrence signals
    s1_hits = [0] * (3 * m + 1)
    s1_of: dict[str, list[int]] = {}
    for j in range(1, n + 1):
        for o in occ.y2(j):
            side = "v^1" if o.positive else "v^0"
            idx = occ.y1(o)
            s1_hits[idx] += 1
            b.edge(f"{side}_{j}", f"sigma^1_{idx}", "P/v-sigma1")
            s1_of.setdefault(f"{side}_{j}", []).append(idx)
    if any(h != 1 for h in s1_hits[1:]):
        raise ConstructionError(f"P/v-sigma1: y1 is not a bijection, hits {s1_hits[1:]}")
    # Each occurrence pairs one d^3 with one sigma^1 on the same variable vertex.
    for side in set(d3_of) | set(s1_of):
        if len(d3_of.get(side, ())) != len(s1_of.get(side, ())):
            raise ConstructionError(f"{side}: {len(d3_of.get(side, ()))} d^3 edges but "
                                    f"{len(s1_of.get(side, ()))} sigma^1 edges")

    if len(b.labels) != expected_vertex_count(n, m):
        raise ConstructionError(f"vertex count {len(b.labels)} != {expected_vertex_count(n, m)}")

    ones = [f"v^0_{j}" for j in range(1, n + 1)] + [f"v^1_{j}" for j in range(1, n + 1)]
    ones += [f"d^3_{i}" for i in range(1, 3 * m + 1)]
    ones += [f"chi_{i}" for i in range(1, m + 1)]
    ones += ["lambda_2", "d^11_1", "c^1_1"]
    ones += [f"d^8_{i}" for i in range(1, 4 * m + 1)]
    if odd:
        ones += ["d^9_1", "d^9_2"]
    weights = 0
    for name in ones:
        weights |= 1 << b.index[name]
    graph = Graph.from_edges(len(b.labels), b.edges, b.labels)
    return ReductionArtifact(inst, graph, weights, dict(b.index), DEVIATIONS)


# -- audits --------------------------------------------------------------------------

@dataclass(frozen=True)
class SizeReport:
    n: int
    m: int
    vertices: int
    edges: int
    clause_marginal: tuple[int, int]
    variable_marginal: tuple[int, int]
    formula_ok: bool

    def lines(self) -> list[str]:
        return [f"n={self.n} m={self.m} vertices={self.vertices} edges={self.edges}",
                f"clause marginal: {self.clause_marginal[0]:+d} vertices {self.clause_marginal[1]:+d} edges",
                f"variable marginal: {self.variable_marginal[0]:+d} vertices "
                f"{self.variable_marginal[1]:+d} edges",
                f"vertex formula 4n+28m+9(+7 if n odd): {'ok' if self.formula_ok else 'MISMATCH'}"]


def audit_sizes(inst: QbfInstance, extra_clause=None) -> SizeReport:
    base = build_reduction(inst)
    clause = extra_clause or ((1, True), (1, True), (1, True))
    more_c = build_reduction(inst.with_clause(clause))
    more_v = build_reduction(inst.with_variable())
    V, E = base.graph.n, base.graph.edge_count
    return SizeReport(inst.n, inst.m, V, E,
                      (more_c.graph.n - V, more_c.graph.edge_count - E),
                      (more_v.graph.n - V, more_v.graph.edge_count - E),
                      V == expected_vertex_count(inst.n, inst.m))


@dataclass
class PlayAudit:
    leaves: int = 0
    max_after_variables: int = 0
    alternation_ok: bool = True
    dummy_never_playable: bool = True
    problems: list[str] = field(default_factory=list)


DEFAULT_PLAY_BUDGET = 200_000


def audit_play(art: ReductionArtifact, budget: int = DEFAULT_PLAY_BUDGET) -> PlayAudit:
    """Walk every legal play sequence from the initial position.

    Checks that move t (1-based, t <= n) is on {v^0_t, v^1_t} with exactly
    those two available, that afterwards at most one move is ever available,
    and that no dummy vertex is ever playable.
    """
    g = art.graph
    n = art.instance.n
    masks = g.closed_masks
    dummy = 0
    for v, label in enumerate(g.labels):
        if label.startswith("d^"):
            dummy |= 1 << v
    var_pairs = [(1 << art[f"v^0_{j}"]) | (1 << art[f"v^1_{j}"]) for j in range(1, n + 1)]
    audit = PlayAudit()
    stack = [(art.weights, 0)]
    visited = 0
    while stack:
        w, depth = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceeded("play audit over budget", {"states": visited})
        play = playable_mask(g, w)
        if play & dummy and audit.dummy_never_playable:
            audit.dummy_never_playable = False
            audit.problems.append(f"dummy playable at depth {depth}")
        if depth < n:
            if play != var_pairs[depth] and audit.alternation_ok:
                audit.alternation_ok = False
                audit.problems.append(f"move {depth + 1}: playable set is not {{v^0_{depth + 1}, v^1_{depth + 1}}}")
        else:
            audit.max_after_variables = max(audit.max_after_variables, play.bit_count())
        if not play:
            audit.leaves += 1
        x = play
        while x:
            low = x & -x
            x ^= low
            stack.append((w ^ masks[low.bit_length() - 1], depth + 1))
    return audit


def verify_instance(inst: QbfInstance, name: str = "", solver_limit=None) -> dict:
    art = build_reduction(inst)
    truth = evaluate_qbf(inst)
    g = Solver(solver_limit).grundy(art.position)
    play = audit_play(art)
    initial = {art.role(v) for v in range(art.graph.n) if (playable_mask(art.graph, art.weights) >> v) & 1}
    ok = ((g > 0) == truth and play.max_after_variables <= 1 and play.alternation_ok
          and play.dummy_never_playable and initial == {"v^0_1", "v^1_1"})
    return {"instance": name or inst.to_dimacs().replace("\n", " ").strip(),
            "n": inst.n, "m": inst.m, "qbf": truth, "nimber": g,
            "first_player_wins": g > 0, "forced_after_variables": play.max_after_variables <= 1,
            "alternation": play.alternation_ok, "dummies_unplayable": play.dummy_never_playable,
            "ok": ok}


FIG8 = "p cnf 3 1\n1 2 3 0\n"
FIG9 = "p cnf 6 4\n1 -2 3 0\n-1 4 5 0\n1 -5 6 0\n-3 6 -6 0\n"


def polarity_enumeration() -> list[QbfInstance]:
    out = []
    for mask in range(8):
        lits = [(v, not (mask >> (v - 1)) & 1) for v in (1, 2, 3)]
        out.append(QbfInstance(3, (tuple(lits),)))
    return out


def random_instances(count: int, seed: int, n_max: int = 4, m_max: int = 3) -> list[QbfInstance]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, n_max)
        m = rng.randint(1, m_max)
        clauses = tuple(tuple((rng.randint(1, n), rng.random() < 0.5) for _ in range(3))
                        for _ in range(m))
        out.append(QbfInstance(n, clauses))
    return out


def equivalence_suite(samples: int = 50, seed: int = 0) -> list[tuple[str, QbfInstance]]:
    suite = [("fig8", parse_dimacs(FIG8)), ("fig9", parse_dimacs(FIG9))]
    suite += [(f"polarity{i}", inst) for i, inst in enumerate(polarity_enumeration())]
    suite += [(f"random{i}", inst) for i, inst in enumerate(random_instances(samples, seed))]
    return suite


def verify_equivalence(inst: QbfInstance | None = None, samples: int = 50, seed: int = 0,
                       mapper=map) -> ClaimReport:
    """Winner of the gadget game against the brute-force QBF value.

    With an instance, checks just that one; otherwise runs the standard
    suite (figure instances, the n=3 m=1 polarity enumeration, and seeded
    random instances with n <= 4, m <= 3).
    """
    if inst is not None:
        suite = [("input", inst)]
        checked = "single instance"
    else:
        suite = equivalence_suite(samples, seed)
        checked = f"figures + polarity enumeration + {samples} random (seed {seed})"
    report = ClaimReport("qbf_equivalence", checked)
    for case in mapper(_verify_job, suite):
        if case is None:
            report.incomplete = True
            continue
        ok = case.pop("ok")
        report.add(ok, **case)
    return report


def _verify_job(item):
    name, inst = item
    try:
        return verify_instance(inst, name)
    except BudgetExceeded:
        return None
