"""Canonical positions on generalized Petersen graphs and the claim suites."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetExceeded, InputError
from .graphs import GamePosition, build_petersen
from .reports import ClaimReport
from .solver import Solver

TAGS = ("P01", "P10", "P11")
CLAIMS = ("thm_3k_even", "thm_bounds", "cor_isomorphism", "thm_four_equal",
          "thm_even_cycle_zero")


def normalize_tag(tag: str) -> str:
    t = tag.upper()
    if t in ("01", "10", "11"):
        t = "P" + t
    if t == "ALLONES":
        t = "P11"
    if t not in TAGS:
        raise InputError(f"unknown Petersen variant {tag!r}")
    return t


@dataclass(frozen=True)
class PetersenVariant:
    tag: str
    m: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "tag", normalize_tag(self.tag))
        if self.m < 3 or not 1 <= self.k < self.m:
            raise InputError(f"P(m,k) needs m >= 3 and 1 <= k < m, got ({self.m},{self.k})")


def make_petersen_position(v: PetersenVariant | str, m: int | None = None,
                           k: int | None = None) -> GamePosition:
    if not isinstance(v, PetersenVariant):
        v = PetersenVariant(v, m, k)
    g = build_petersen(v.m, v.k)
    outer = 0 if v.tag == "P10" else 1
    inner = 0 if v.tag == "P01" else 1
    return GamePosition.from_bits(g, [outer] * v.m + [inner] * v.m)


def petersen_nimber(tag: str, m: int, k: int, solver: Solver | None = None) -> int:
    return (solver or Solver()).grundy(make_petersen_position(tag, m, k))


def graph_cells(m: int, k: int, tags: Iterable[str], memo_limit=None) -> list[tuple[str, int, int, int | None]]:
    """Nimbers of several variants of P(m,k) sharing one memo; None when over budget."""
    solver = Solver(memo_limit)
    out = []
    for tag in tags:
        try:
            out.append((tag, m, k, solver.grundy(make_petersen_position(tag, m, k))))
        except BudgetExceeded:
            out.append((tag, m, k, None))
    return out


def table_cells(m_range: Iterable[int], k_range: Iterable[int]) -> list[tuple[int, int]]:
    ks = list(k_range)
    return [(m, k) for m in m_range for k in ks if m >= 3 and 1 <= k < m]


def nimber_table(tag: str, m_range: Iterable[int], k_range: Iterable[int],
                 memo_limit=None, mapper=map) -> list[tuple[str, int, int, int | None]]:
    """Rows (variant, m, k, nimber) in (m, k) order.  ``mapper`` may be a
    pool's ordered map; the result does not depend on it."""
    tag = normalize_tag(tag)
    cells = table_cells(m_range, k_range)
    results = mapper(_cell_job, [(m, k, (tag,), memo_limit) for m, k in cells])
    return [row for rows in results for row in rows]


def _cell_job(args):
    m, k, tags, memo_limit = args
    return graph_cells(m, k, tags, memo_limit)


def table_csv(rows) -> str:
    lines = ["variant,m,k,nimber"]
    for tag, m, k, g in rows:
        lines.append(f"{tag},{m},{k},{'unsolved' if g is None else g}")
    return "\n".join(lines) + "\n"


# -- claims --------------------------------------------------------------------

def _half(m: int) -> range:
    return range(1, (m - 1) // 2 + 1)


def verify_claim(claim: str, m_max: int = 12, m_min: int | None = None,
                 ks: Iterable[int] | None = None, memo_limit=None, mapper=map) -> ClaimReport:
    if claim not in CLAIMS:
        raise InputError(f"unknown claim {claim!r}")
    lo = m_min if m_min is not None else 3
    if claim == "thm_3k_even":
        kk = list(ks) if ks is not None else [2, 4]
        if any(k % 2 for k in kk):
            raise InputError("thm_3k_even needs even k")
        report = ClaimReport(claim, f"k in {{{','.join(map(str, kk))}}}")
        jobs = [(3 * k, k, ("P10",), memo_limit) for k in kk]
        for rows in mapper(_cell_job, jobs):
            (_, m, k, g), = rows
            if g is None:
                report.incomplete = True
                continue
            report.add(g == 0, m=m, k=k, P10=g)
        return report

    if claim == "thm_bounds":
        report = ClaimReport(claim, f"{lo} <= m <= {m_max}, 1 <= k <= (m-1)//2")
        jobs = [(m, k, TAGS, memo_limit) for m in range(lo, m_max + 1) for k in _half(m)]
        for rows in mapper(_cell_job, jobs):
            vals = {tag: g for tag, _, _, g in rows}
            _, m, k, _ = rows[0]
            if None in vals.values():
                report.incomplete = True
                continue
            ok = vals["P11"] in (0, 1, 2) and vals["P01"] in (0, 1) and vals["P10"] in (0, 1)
            report.add(ok, m=m, k=k, **vals)
        return report

    if claim == "cor_isomorphism":
        report = ClaimReport(claim, f"{lo} <= m <= {m_max}, k1*k2 = 1 mod m, k1,k2 <= m//2")
        pairs = [(m, k1, k2) for m in range(lo, m_max + 1)
                 for k1 in range(1, m // 2 + 1) for k2 in range(1, m // 2 + 1)
                 if (k1 * k2) % m == 1 % m]
        need = sorted({(m, k) for m, k1, k2 in pairs for k in (k1, k2)})
        values = {}
        for rows in mapper(_cell_job, [(m, k, TAGS, memo_limit) for m, k in need]):
            for tag, m, k, g in rows:
                values[(tag, m, k)] = g
        for m, k1, k2 in pairs:
            got = {f"{t}_k1": values[(t, m, k1)] for t in TAGS}
            got.update({f"{t}_k2": values[(t, m, k2)] for t in TAGS})
            if None in got.values():
                report.incomplete = True
                continue
            part1 = all(got[f"{t}_k1"] == got[f"{t}_k2"] for t in TAGS)
            part2 = got["P01_k1"] == got["P10_k2"]
            report.add(part1 and part2, m=m, k1=k1, k2=k2, **got)
        return report

    if claim == "thm_four_equal":
        from .heaps import jl_grundy

        lo = max(lo, 5)
        report = ClaimReport(claim, f"{lo} <= m <= {m_max}")
        jobs = [(m, k, ("P01", "P10"), memo_limit) for m in range(lo, m_max + 1) for k in (1, 2)]
        results = list(mapper(_cell_job, jobs))
        for i, m in enumerate(range(lo, m_max + 1)):
            vals = {}
            for rows in results[2 * i:2 * i + 2]:
                for tag, _, k, g in rows:
                    vals[f"{tag}_k{k}"] = g
            if None in vals.values():
                report.incomplete = True
                continue
            jl = jl_grundy(m)
            report.add(len(set(vals.values()) | {jl}) == 1, m=m, JL=jl, **vals)
        return report

    # thm_even_cycle_zero
    report = ClaimReport(claim, f"6 <= 2k <= {m_max}")
    jobs = [(2 * k, 1, ("P01",), memo_limit) for k in range(3, m_max // 2 + 1)]
    for rows in mapper(_cell_job, jobs):
        (_, m, _, g), = rows
        if g is None:
            report.incomplete = True
            continue
        report.add(g == 0, m=m, k=m // 2, P01=g)
    return report


def symmetric_k_agreement(m_max: int = 10) -> ClaimReport:
    """P(m,k) and P(m,m-k) are the same graph; check the Nimbers agree when
    built from both generators."""
    report = ClaimReport("k_symmetry", f"3 <= m <= {m_max}")
    for m in range(3, m_max + 1):
        for k in range(1, m):
            if k > m - k:
                continue
            for tag in TAGS:
                a = petersen_nimber(tag, m, k)
                b = petersen_nimber(tag, m, m - k)
                report.add(a == b, variant=tag, m=m, k=k, g_k=a, g_mk=b)
    return report
