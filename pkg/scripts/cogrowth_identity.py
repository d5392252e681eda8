"""Compare R(z)/(1-z^2) with Gamma(z/(1+z^2))/(1+z^2) coefficientwise.

    python scripts/cogrowth_identity.py --order 12
"""
from __future__ import annotations

import argparse

from cogrowth_lab.series_lab import cogrowth_check
from cogrowth_lab.walk_engine import EXACT, VH_S, count_closed, count_reduced_split


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=12)
    args = ap.parse_args()
    N = args.order
    r = count_reduced_split(N, EXACT)[0]
    c = count_closed(VH_S, "VH", N, EXACT)
    rep = cogrowth_check(r.values, c.values, N)
    print("n\tR\tGamma\tlhs\trhs")
    for n in range(N + 1):
        print(f"{n}\t{r[n]}\t{c[n]}\t{rep.lhs[n]}\t{rep.rhs[n]}")
    print(f"# first mismatch: {rep.first_mismatch}")


if __name__ == "__main__":
    main()
