"""Write the closed-form / optimal-k / family-gap discrepancy CSV and summarise disagreements."""

from __future__ import annotations

import argparse
from collections import Counter
from pathlib import Path

from degdev.enumeration import verify_closed_forms
from degdev.families import discrepancy_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--closed-n-max", type=int, default=12)
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--out", type=Path, default=Path("discrepancies.csv"))
    args = ap.parse_args()

    rows = verify_closed_forms(args.closed_n_max, args.n_max)
    args.out.write_text(discrepancy_csv(rows))
    total = Counter(r.context for r in rows)
    bad = Counter(r.context for r in rows if not r.agrees)
    for ctx in sorted(total):
        print(f"{ctx:30s} {bad[ctx]:4d} / {total[ctx]:4d} disagree")
    print(f"-> {args.out}")


if __name__ == "__main__":
    main()
