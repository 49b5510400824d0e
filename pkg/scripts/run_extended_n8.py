"""Exhaustive n = 8 sweep with a resumable checkpoint, writing the extremal report CSV."""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from degdev.enumeration import max_deviation, report_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--checkpoint", type=Path, default=Path("n8.ckpt"))
    ap.add_argument("--out", type=Path, default=Path("conjecture_report_n8.csv"))
    args = ap.parse_args()

    t0 = time.perf_counter()
    rep = max_deviation(args.n, threads=args.threads, experimental=args.n > 8, checkpoint=args.checkpoint)
    args.out.write_text(report_csv([rep]))
    print(rep)
    print(f"elapsed {time.perf_counter() - t0:.1f}s -> {args.out}")


if __name__ == "__main__":
    main()
