"""Six-t counts from the DP next to the shape formula under both summation readings.

    python scripts/r2_readings.py --max-ell 13
"""
from __future__ import annotations

import argparse

from cogrowth_lab import diophantine as D
from cogrowth_lab.walk_engine import count_reduced_split, mod2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-ell", type=int, default=13)
    ap.add_argument("--bits", type=int, default=40)
    args = ap.parse_args()
    ring = mod2(args.bits)
    r2 = count_reduced_split(2 * args.max_ell + 6, ring)[2]
    print(f"# counts mod 2^{args.bits}")
    print("ell\tlength\tdp_r2/8^6\texpanded/8^6\trepresentative/8^6")
    for ell in range(1, args.max_ell + 1):
        L = 2 * ell + 6
        e = D.r2_formula(ell, "expanded")
        p = D.r2_formula(ell, "representative")
        print(f"{ell}\t{L}\t{r2[L] // 8**6}\t{ring.reduce(e) // 8**6}\t{ring.reduce(p) // 8**6}")


if __name__ == "__main__":
    main()
