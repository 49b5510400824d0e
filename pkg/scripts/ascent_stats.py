"""Distribution of ascent trace lengths and terminal families over all connected graphs on n vertices."""

from __future__ import annotations

import argparse
from collections import Counter

from degdev.ascent import ascend
from degdev.enumeration import enumerate_connected


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    args = ap.parse_args()

    lengths, terminals = Counter(), Counter()
    for g in enumerate_connected(args.n):
        tr = ascend(g)
        lengths[len(tr.steps)] += 1
        terminals[(tr.terminal_family.kind, tr.terminal_family.k)] += 1
    print("trace length  graphs")
    for k in sorted(lengths):
        print(f"{k:12d}  {lengths[k]}")
    print("terminal        k  graphs")
    for (kind, k), c in sorted(terminals.items()):
        print(f"{kind:14s} {k:2d}  {c}")


if __name__ == "__main__":
    main()
