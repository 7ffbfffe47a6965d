"""Canonical positions on the 2 x m lattice and their Nimbers at scale.

``grundy_H`` / ``grundy_D`` use the mutual recurrences for the H and D
families.  ``grundy_T`` / ``grundy_grid_allones`` use a capped-segment
calculus: a 2 x l strip that is all ones apart from its two ends, where each
end is one of

* ``F`` (full): no zeros;
* ``T`` (top cap): end column all zero, next column zero in the top row;
* ``B`` (bottom cap): end column all zero, next column zero in the bottom row.

A move on an all-ones column i zeroes that column and the row it was played
in on both sides, so the strip splits at column i into two capped strips that
share it.  Moves within three columns of an end are worked out once per cap
type on an explicit window.  H_m is (B, B), D_m is (B, T), T_m is (F, T) and
the all-ones grid is (F, F).  The calculus is checked against the generic
solver for small sizes (see tests) before it is trusted at large m.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .engine import apply_move, playable_set
from .errors import BudgetExceeded, InputError
from .graphs import GamePosition, lattice2, lattice_index
from .solver import Solver

KINDS = ("H", "D", "T", "GridAllOnes")
_MIN_M = {"H": 3, "D": 3, "T": 2, "GridAllOnes": 1}


@dataclass(frozen=True)
class LatticeFamilyId:
    kind: str
    m: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown lattice family {self.kind!r}")
        if self.m < _MIN_M[self.kind]:
            raise InputError(f"family {self.kind} needs m >= {_MIN_M[self.kind]}, got {self.m}")


def family_zeros(kind: str, m: int) -> list[tuple[int, int]]:
    """Zero set of a family as (row, column) coordinates."""
    LatticeFamilyId(kind, m)
    if kind == "H":
        if m == 3:
            return [(0, 1), (0, 3), (1, 1), (1, 3)]
        return [(0, 1), (0, m), (1, 1), (1, 2), (1, m - 1), (1, m)]
    if kind == "D":
        return [(0, 1), (0, m - 1), (0, m), (1, 1), (1, 2), (1, m)]
    if kind == "T":
        return [(0, m - 1), (0, m), (1, m)]
    return []


def make_family(fid: LatticeFamilyId | str, m: int | None = None) -> GamePosition:
    if not isinstance(fid, LatticeFamilyId):
        fid = LatticeFamilyId(fid, m)
    g = lattice2(fid.m)
    zeros = {lattice_index(fid.m, i, j) for i, j in family_zeros(fid.kind, fid.m)}
    return GamePosition.with_zeros(g, zeros)


# -- H / D recurrences ---------------------------------------------------------

class _HDTable:
    def __init__(self):
        self.H = np.zeros(3, dtype=np.int64)
        self.D = np.zeros(3, dtype=np.int64)

    def extend(self, upto: int) -> None:
        start = len(self.H)
        if upto < start:
            return
        H = np.zeros(upto + 1, dtype=np.int64)
        D = np.zeros(upto + 1, dtype=np.int64)
        H[:start] = self.H
        D[:start] = self.D
        for m in range(start, upto + 1):
            s = (m + 1) // 2
            # i runs over 3..s; partner index m+1-i runs over m-2 down to m+1-s.
            hx = H[3:s + 1] ^ H[m + 1 - s:m - 1][::-1]
            dx = D[3:s + 1] ^ D[m + 1 - s:m - 1][::-1]
            H[m] = _mex_array(np.concatenate((hx, dx)))
            # i runs over 3..m-2; partner m+1-i runs over m-2 down to 3.
            ex = H[3:m - 1] ^ D[3:m - 1][::-1]
            D[m] = _mex_array(ex)
            if m <= 12:
                if s < 3:
                    _assert_terminal("H", m)
                if m - 2 < 3:
                    _assert_terminal("D", m)
        self.H, self.D = H, D


def _mex_array(values: np.ndarray) -> int:
    if values.size == 0:
        return 0
    present = np.zeros(int(values.max()) + 2, dtype=bool)
    present[values] = True
    return int(np.argmin(present))


def _assert_terminal(kind: str, m: int) -> None:
    if playable_set(make_family(kind, m)):
        raise AssertionError(f"{kind}_{m} has moves but its recurrence index set is empty")


_HD = _HDTable()


def grundy_H(m: int) -> int:
    LatticeFamilyId("H", m)
    _HD.extend(m)
    return int(_HD.H[m])


def grundy_D(m: int) -> int:
    LatticeFamilyId("D", m)
    _HD.extend(m)
    return int(_HD.D[m])


def grundy_Pm1_empty(m: int) -> int:
    """Nimber of P(m,1) with every weight 1: every first move leaves H_{m+1}."""
    if m < 3:
        raise InputError(f"P(m,1) needs m >= 3, got {m}")
    return 1 if grundy_H(m + 1) == 0 else 0


def hd_tables(upto: int) -> tuple[np.ndarray, np.ndarray]:
    _HD.extend(upto)
    return _HD.H[:upto + 1].copy(), _HD.D[:upto + 1].copy()


# -- capped segments -------------------------------------------------------------

CAPS = ("F", "T", "B")
_CAP_COLS = {"F": ((1, 1), (1, 1)), "T": ((0, 0), (0, 1)), "B": ((0, 0), (1, 0))}
SMALL = 8  # lengths below this are solved directly
VALIDATE_UPTO = 12


def segment_columns(length: int, left: str, right: str) -> tuple[tuple[int, int], ...]:
    """Column weights (top, bottom) of the capped strip; caps need length >= 4."""
    if length < 4:
        raise InputError(f"capped segment needs length >= 4, got {length}")
    cols = [(1, 1)] * length
    cols[0], cols[1] = _CAP_COLS[left]
    cols[-1], cols[-2] = _CAP_COLS[right]
    return tuple(cols)


def columns_position(cols) -> GamePosition:
    m = len(cols)
    g = lattice2(m)
    bits = [0] * (2 * m)
    for j, (top, bottom) in enumerate(cols, start=1):
        bits[lattice_index(m, 0, j)] = top
        bits[lattice_index(m, 1, j)] = bottom
    return GamePosition.from_bits(g, bits)


_SMALL_SOLVER = Solver()


@lru_cache(maxsize=None)
def _explicit_value(cols) -> int:
    if not cols:
        return 0
    return _SMALL_SOLVER.grundy(columns_position(cols))


def _match_left_cap(cols) -> str | None:
    if len(cols) < 4 or any(c != (1, 1) for c in cols[2:]):
        return None
    for cap, pattern in _CAP_COLS.items():
        if cols[:2] == pattern:
            return cap
    return None


@lru_cache(maxsize=None)
def _left_end_rules(cap: str) -> tuple[tuple[int, int, str], ...]:
    """Outcomes of the moves in columns 1..3 of a long strip with this left cap.

    Each rule is (value of the split-off left piece, columns consumed, new
    left cap of the remainder).  Worked out on an explicit window whose
    column 4 onward is all ones, which holds for every strip of length >= 8.
    """
    window = list(_CAP_COLS[cap]) + [(1, 1)] * 6
    width = len(window)
    pos = columns_position(window)
    rules = []
    for j in range(1, 4):
        for row in (0, 1):
            v = lattice_index(width, row, j)
            if v not in playable_set(pos):
                continue
            w = pos.weights ^ pos.graph.closed_masks[v]
            after = [((w >> lattice_index(width, 0, c)) & 1, (w >> lattice_index(width, 1, c)) & 1)
                     for c in range(1, width + 1)]
            rule = None
            for c in range(4, 0, -1):
                if after[c - 1] != (0, 0):
                    continue
                new_cap = _match_left_cap(tuple(after[c - 1:]))
                if new_cap is not None:
                    rule = (_explicit_value(tuple(after[:c])) if c > 1 else 0, c - 1, new_cap)
                    break
            if rule is None:
                raise AssertionError(f"no capped-segment rule for a move at column {j} under cap {cap}")
            rules.append(rule)
    return tuple(rules)


class _SegmentTable:
    def __init__(self):
        self.values = {(a, b): np.full(SMALL, -1, dtype=np.int64) for a in CAPS for b in CAPS}
        for (a, b), arr in self.values.items():
            for length in range(4, SMALL):
                arr[length] = _explicit_value(segment_columns(length, a, b))
        self.top = SMALL - 1

    def extend(self, upto: int) -> None:
        if upto <= self.top:
            return
        vals = {k: np.concatenate((arr, np.full(upto - self.top, -1, dtype=np.int64)))
                for k, arr in self.values.items()}
        # Corner moves turn F into T/B at the same length, so do F-free pairs first.
        order = sorted(vals, key=lambda k: (k.count("F"), k))
        for length in range(self.top + 1, upto + 1):
            for left, right in order:
                parts = []
                for piece, used, cap in _left_end_rules(left):
                    parts.append(piece ^ _get(vals, cap, right, length - used))
                for piece, used, cap in _left_end_rules(right):
                    parts.append(piece ^ _get(vals, left, cap, length - used))
                extra = np.array(parts, dtype=np.int64)
                interior = [extra]
                if length - 3 >= 4:
                    for r in ("T", "B"):
                        a = vals[(left, r)][4:length - 2]
                        b = vals[(r, right)][4:length - 2][::-1]
                        interior.append(a ^ b)
                vals[(left, right)][length] = _mex_array(np.concatenate(interior))
        self.values = vals
        self.top = upto

    def get(self, left: str, right: str, length: int) -> int:
        self.extend(length)
        return int(self.values[(left, right)][length])


def _get(vals, left, right, length) -> int:
    v = int(vals[(left, right)][length])
    if v < 0:
        raise AssertionError(f"segment ({left},{right}) length {length} used before it was computed")
    return v


_SEG = _SegmentTable()
_VALID: bool | None = None


def calculus_validated() -> bool:
    """Compare every capped segment of length 4..12 with the generic solver.

    Runs once; the segment table is only trusted beyond the oracle range if
    this passes.
    """
    global _VALID
    if _VALID is None:
        _VALID = all(
            _SEG.get(a, b, length) == _explicit_value(segment_columns(length, a, b))
            for a in CAPS for b in CAPS for length in range(4, VALIDATE_UPTO + 1))
    return _VALID


def grundy_segment(length: int, left: str, right: str, fallback: bool = True) -> int:
    if left not in CAPS or right not in CAPS:
        raise InputError(f"caps must be in {CAPS}")
    if length < 4:
        raise InputError(f"capped segment needs length >= 4, got {length}")
    if length <= VALIDATE_UPTO or not calculus_validated():
        if length > VALIDATE_UPTO and not fallback:
            raise BudgetExceeded("segment calculus failed validation and fallback is disabled",
                                 {"length": length})
        return _explicit_value(segment_columns(length, left, right))
    return _SEG.get(left, right, length)


def grundy_T(m: int, fallback: bool = True) -> int:
    LatticeFamilyId("T", m)
    if m < 4:
        return _SMALL_SOLVER.grundy(make_family("T", m))
    return grundy_segment(m, "F", "T", fallback)


def grundy_grid_allones(m: int, fallback: bool = True) -> int:
    LatticeFamilyId("GridAllOnes", m)
    if m < 4:
        return _SMALL_SOLVER.grundy(make_family("GridAllOnes", m))
    return grundy_segment(m, "F", "F", fallback)


def segment_table_values(left: str, right: str, upto: int) -> list[int]:
    """Raw calculus values for lengths 4..upto, bypassing the oracle path."""
    _SEG.extend(upto)
    return [int(x) for x in _SEG.values[(left, right)][4:upto + 1]]


# -- symmetry checks -------------------------------------------------------------

def h_mex_sets(m: int) -> tuple[set[int], set[int]]:
    """The H_m option values over i in 3..s and over the full range 3..m-2."""
    H, D = hd_tables(m)
    s = (m + 1) // 2
    half = {int(H[i] ^ H[m + 1 - i]) for i in range(3, s + 1)}
    half |= {int(D[i] ^ D[m + 1 - i]) for i in range(3, s + 1)}
    full = {int(H[i] ^ H[m + 1 - i]) for i in range(3, m - 1)}
    full |= {int(D[i] ^ D[m + 1 - i]) for i in range(3, m - 1)}
    return half, full


def rotate180(pos: GamePosition, m: int) -> GamePosition:
    bits = pos.bits
    out = [0] * (2 * m)
    for i in (0, 1):
        for j in range(1, m + 1):
            out[lattice_index(m, 1 - i, m + 1 - j)] = bits[lattice_index(m, i, j)]
    return GamePosition.from_bits(pos.graph, out)


def d_rotation_symmetric(m: int) -> bool:
    """D_m is fixed by the half-turn, and the move at v_{1,i} is the half-turn
    image of the move at v_{0,m+1-i} (for every playable v_{1,i})."""
    pos = make_family("D", m)
    if rotate180(pos, m) != pos:
        return False
    playable = playable_set(pos)
    for i in range(1, m + 1):
        a, b = lattice_index(m, 1, i), lattice_index(m, 0, m + 1 - i)
        if (a in playable) != (b in playable):
            return False
        if a in playable and rotate180(apply_move(pos, a), m) != apply_move(pos, b):
            return False
    return True


def grundy_family(fid: LatticeFamilyId) -> int:
    return {"H": grundy_H, "D": grundy_D, "T": grundy_T,
            "GridAllOnes": grundy_grid_allones}[fid.kind](fid.m)


def family_table(kind: str, m_values) -> list[tuple[int, int]]:
    return [(m, grundy_family(LatticeFamilyId(kind, m))) for m in m_values]
