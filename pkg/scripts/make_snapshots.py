"""Regenerate the bundled sequence snapshots in src/toggle/data/.

The OEIS could not be reached when these files were made, so they are
computed locally by routes that avoid the octal-code engine:

* b071426.txt: Jacob's Ladder on paths of n vertices, with moves found by
  graph distance on the path and positions split into independent pieces.
* b361517.txt: Jacob's Ladder on the m-cycle.  Direct play for m <= 20;
  beyond that, the first move leaves a path of m-5 vertices, valued by the
  path table above.

Replace them with official b-files (``toggle oeis-check --bfile``) when the
OEIS is reachable.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from toggle.heaps import DIRECT_JL_LIMIT, jl_grundy_direct, path_jl_grundy_table

HEADER = ("# Locally generated snapshot, NOT downloaded from oeis.org.\n"
          "# {what}\n# Route: {route}\n# Regenerate with scripts/make_snapshots.py.\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=1001)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "src/toggle/data")
    args = ap.parse_args()

    path_table = path_jl_grundy_table(args.count)
    lines = [HEADER.format(what="A071426: Grundy values of octal game 0.11337, a(n) for heap n.",
                           route="Jacob's Ladder on the path P_n by graph distance.")]
    lines += [f"{n} {g}\n" for n, g in enumerate(path_table)]
    (args.out / "b071426.txt").write_text("".join(lines))

    lines = [HEADER.format(what="A361517: Nimber of P01(m,1), a(m) for m >= 3.",
                           route=f"Jacob's Ladder on C_m; direct play for m <= {DIRECT_JL_LIMIT}, "
                                 "else 1 if the path of m-5 vertices has value 0.")]
    for m in range(3, args.count + 3):
        if m <= DIRECT_JL_LIMIT:
            g = jl_grundy_direct(m)
        else:
            g = 1 if path_table[m - 5] == 0 else 0
        lines.append(f"{m} {g}\n")
    (args.out / "b361517.txt").write_text("".join(lines))


if __name__ == "__main__":
    main()
