"""Jacob's Ladder, octal take-and-break games, and b-file cross-checks.

Jacob's Ladder on a graph: a move picks a remaining vertex v and deletes
every remaining vertex within distance 2 of v, distance measured in the
subgraph induced by the remaining vertices.  A lone vertex may be taken.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from .errors import InputError
from .solver import mex

JL_CODE = "0.11337"
SEQUENCES = ("A071426", "A361517")
DIRECT_JL_LIMIT = 20


@dataclass(frozen=True)
class OctalCode:
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= d <= 7 for d in self.digits):
            raise InputError(f"octal digits must be in 0..7, got {self.digits}")

    @classmethod
    def parse(cls, text: str) -> "OctalCode":
        s = text.strip()
        for prefix in ("0.", "·", "."):
            if s.startswith(prefix):
                s = s[len(prefix):]
                break
        if not s or not s.isdigit():
            raise InputError(f"bad octal code {text!r}")
        return cls(tuple(int(c) for c in s))

    def options(self, k: int) -> set[int]:
        """Option bits {1,2,4} of digit d_k (k counts from 1)."""
        d = self.digits[k - 1] if 1 <= k <= len(self.digits) else 0
        return {b for b in (1, 2, 4) if d & b}

    def __str__(self):
        return "0." + "".join(map(str, self.digits))


def octal_moves(code: OctalCode, heap: int) -> set[tuple[int, tuple[int, ...]]]:
    """Outcomes of one move on a heap as (beans removed, sorted remaining heaps)."""
    out = set()
    for k in range(1, len(code.digits) + 1):
        if k > heap:
            break
        opts = code.options(k)
        rest = heap - k
        if 1 in opts and rest == 0:
            out.add((k, ()))
        if 2 in opts and rest >= 1:
            out.add((k, (rest,)))
        if 4 in opts and rest >= 2:
            for a in range(1, rest // 2 + 1):
                out.add((k, (a, rest - a)))
    return out


_OCTAL_TABLES: dict[OctalCode, list[int]] = {}


def octal_grundy(code: OctalCode | str, heap: int) -> int:
    if isinstance(code, str):
        code = OctalCode.parse(code)
    if heap < 0:
        raise InputError(f"heap must be >= 0, got {heap}")
    table = _OCTAL_TABLES.setdefault(code, [0])
    while len(table) <= heap:
        n = len(table)
        seen = set()
        for _, parts in octal_moves(code, n):
            g = 0
            for p in parts:
                g ^= table[p]
            seen.add(g)
        table.append(mex(seen))
    return table[heap]


def octal_sequence(code: OctalCode | str, count: int) -> list[int]:
    return [octal_grundy(code, n) for n in range(count)]


# -- Jacob's Ladder by direct play ----------------------------------------------

def _n2_mask(adj: Sequence[int], remaining: int, v: int) -> int:
    """Remaining vertices within distance 2 of v inside the induced subgraph."""
    first = adj[v] & remaining
    second = 0
    x = first
    while x:
        low = x & -x
        x ^= low
        second |= adj[low.bit_length() - 1]
    return ((1 << v) | first | second) & remaining


def _cycle_adj(m: int) -> list[int]:
    return [(1 << ((v - 1) % m)) | (1 << ((v + 1) % m)) for v in range(m)]


def _path_adj(n: int) -> list[int]:
    return [((1 << (v - 1)) if v else 0) | ((1 << (v + 1)) if v + 1 < n else 0) for v in range(n)]


def jl_direct(adj: Sequence[int], remaining: int) -> int:
    """Grundy value of Jacob's Ladder played on the given vertex set."""
    memo: dict[int, int] = {}

    def rec(r: int) -> int:
        g = memo.get(r)
        if g is not None:
            return g
        seen = set()
        x = r
        while x:
            low = x & -x
            x ^= low
            seen.add(rec(r & ~_n2_mask(adj, r, low.bit_length() - 1)))
        memo[r] = g = mex(seen)
        return g

    return rec(remaining)


@lru_cache(maxsize=None)
def jl_grundy_direct(m: int) -> int:
    if m < 3:
        raise InputError(f"Jacob's Ladder needs m >= 3, got {m}")
    if m > DIRECT_JL_LIMIT:
        raise InputError(f"direct play is limited to m <= {DIRECT_JL_LIMIT}")
    return jl_direct(_cycle_adj(m), (1 << m) - 1)


def jl_grundy_octal(m: int) -> int:
    # Every first move on C_m deletes five vertices (or all of them) and leaves a path.
    return 1 if octal_grundy(OctalCode.parse(JL_CODE), max(m - 5, 0)) == 0 else 0


def jl_grundy(m: int) -> int:
    if m < 3:
        raise InputError(f"Jacob's Ladder needs m >= 3, got {m}")
    g = jl_grundy_octal(m)
    if m <= DIRECT_JL_LIMIT:
        d = jl_grundy_direct(m)
        if d != g:
            raise AssertionError(f"Jacob's Ladder m={m}: direct play {d} but octal route {g}")
    return g


def jl_sum_grundy(parts: Sequence[int]) -> int:
    total = 0
    for p in parts:
        total ^= jl_grundy(p)
    return total


def path_jl_moves(n: int) -> set[tuple[int, tuple[int, ...]]]:
    """Outcomes of one Jacob's Ladder move on a path of n vertices, as
    (vertices removed, sorted lengths of the remaining nonempty pieces)."""
    adj = _path_adj(n)
    full = (1 << n) - 1
    out = set()
    for v in range(n):
        left = full & ~_n2_mask(adj, full, v)
        pieces = []
        run = 0
        for u in range(n + 1):
            if u < n and (left >> u) & 1:
                run += 1
            elif run:
                pieces.append(run)
                run = 0
        out.add((n - left.bit_count(), tuple(sorted(pieces))))
    return out


def path_jl_grundy_table(count: int) -> list[int]:
    """Jacob's Ladder on paths of 0..count-1 vertices, solved by splitting the
    graph-distance move outcomes into independent paths."""
    table: list[int] = []
    for n in range(count):
        seen = set()
        if n:
            for _, pieces in path_jl_moves(n):
                g = 0
                for p in pieces:
                    g ^= table[p]
                seen.add(g)
        table.append(mex(seen))
    return table


# -- sequences -------------------------------------------------------------------

def transform_octal_to_p01(seq: Sequence[int]) -> list[int]:
    if len(seq) < 3:
        raise InputError(f"transform needs at least 3 entries, got {len(seq)}")
    return [0 if x > 0 else 1 for x in seq[3:]]


_BLINE = re.compile(r"^\s*(-?\d+)\s+(-?\d+)\s*$")


@dataclass(frozen=True)
class BFile:
    offset: int
    values: tuple[int, ...]


def parse_bfile_full(text: str) -> BFile:
    offset = None
    values: list[int] = []
    prev = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _BLINE.match(line)
        if not match:
            raise InputError(f"malformed b-file line {raw!r}", line=lineno)
        idx, val = int(match.group(1)), int(match.group(2))
        if prev is not None and idx != prev + 1:
            kind = "gap" if idx > prev + 1 else "non-increasing index"
            raise InputError(f"index {kind}: {prev} then {idx}", line=lineno)
        if offset is None:
            offset = idx
        prev = idx
        values.append(val)
    return BFile(offset if offset is not None else 0, tuple(values))


def parse_bfile(text: str) -> list[int]:
    return list(parse_bfile_full(text).values)


@dataclass(frozen=True)
class SequenceCheckReport:
    sequence: str
    compared: int
    mismatch: int | None = None
    computed_value: int | None = None
    reference_value: int | None = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    def line(self) -> str:
        if self.ok:
            return f"{self.sequence}: {self.compared} terms match"
        return (f"{self.sequence}: mismatch at index {self.mismatch}: "
                f"computed {self.computed_value}, reference {self.reference_value}")


def crosscheck(computed: Sequence[int], reference: Sequence[int], offset: int = 0,
               sequence: str = "") -> SequenceCheckReport:
    """Compare computed[i] with reference[i + offset] where both exist."""
    n = 0
    for i, c in enumerate(computed):
        j = i + offset
        if j < 0:
            continue
        if j >= len(reference):
            break
        n += 1
        if c != reference[j]:
            return SequenceCheckReport(sequence, n, i, c, reference[j])
    return SequenceCheckReport(sequence, n)


def matching_offsets(shorter: dict[int, int], longer: Sequence[int], min_overlap: int = 5) -> list[int]:
    """Shifts d with longer[t] == shorter[t + d] on every overlapping t.

    ``shorter`` maps an index (such as m) to a value; ``longer`` is a plain
    list indexed from 0.
    """
    keys = sorted(shorter)
    found = []
    for d in range(keys[0] - len(longer) + 1, keys[-1] + 1):
        overlap = [(t, t + d) for t in range(len(longer)) if t + d in shorter]
        if len(overlap) >= min_overlap and all(longer[t] == shorter[i] for t, i in overlap):
            found.append(d)
    return found


def data_dir() -> Path:
    env = os.environ.get("TOGGLE_DATA_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def bfile_path(seq_id: str, directory: Path | None = None) -> Path:
    if seq_id not in SEQUENCES:
        raise InputError(f"unknown sequence {seq_id!r}")
    return (directory or data_dir()) / f"b{seq_id[1:]}.txt"


def load_bfile(seq_id: str, path: Path | str | None = None) -> BFile:
    p = Path(path) if path is not None else bfile_path(seq_id)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read b-file {p}: {exc}") from None
    return parse_bfile_full(text)


def fetch_bfile(seq_id: str, oeis_base_url: str, dest: Path | None = None, timeout: float = 30.0) -> Path:
    """Download ``<base>/<id>/b<digits>.txt`` over HTTP and store it in the data
    directory.  Never called unless a base URL is configured explicitly."""
    import urllib.request

    if not oeis_base_url:
        raise InputError("no oeis_base_url configured")
    url = f"{oeis_base_url.rstrip('/')}/{seq_id}/b{seq_id[1:]}.txt"
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        text = resp.read().decode("utf-8")
    parse_bfile_full(text)
    target = dest or bfile_path(seq_id)
    target.write_text(text)
    return target
