"""Print the S(z) parity rows and the r2 formula comparison.

    python scripts/parity_rows.py --jmax 5 --ring mod24
"""
from __future__ import annotations

import argparse
import time

from cogrowth_lab import theorem_check
from cogrowth_lab.walk_engine import parse_ring


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--jmax", type=int, default=5)
    ap.add_argument("--ring", default="mod24")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = theorem_check.miracle_report(args.jmax, parse_ring(args.ring), threads=args.threads)
    print(f"# ring={args.ring} jmax={args.jmax} time={time.perf_counter() - t0:.1f}s")
    print("j\tlen\ts_j\tparity\tm(2j+1)\trhs\tmatch\tr2\tr2_expanded_ok\tr2_representative_ok")
    for r in rows:
        print(
            f"{r.j}\t{r.length}\t{r.s_j}\t{r.s_parity}\t{r.m}\t{r.rhs}\t{r.match}\t{r.r2}\t"
            f"{r.r2_expanded_ok}\t{r.r2_representative_ok}"
        )
    bad = theorem_check.internal_problems(rows)
    for b in bad:
        print("invariant:", b)


if __name__ == "__main__":
    main()
