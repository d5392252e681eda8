"""Which +-1 blocks of f appear in f(1..X), and CRT witnesses for the rest.

    python scripts/saturation.py --X 10000000 --nmax 8
"""
from __future__ import annotations

import argparse
import time

from cogrowth_lab import arith, subword


def show(block) -> str:
    return "".join("+" if u > 0 else "-" for u in block)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--X", type=int, default=10**7)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--witness", action="store_true", help="close missing blocks with CRT witnesses")
    args = ap.parse_args()

    fs = arith.f_sieve(args.X)
    for n in range(1, args.nmax + 1):
        count, missing = subword.saturation_scan(n, args.X, fs)
        print(f"n={n}\tseen={count}/{2**n}\tmissing={len(missing)}")
        if args.witness:
            t0 = time.perf_counter()
            for block in missing:
                cert = subword.crt_witness(block, force_crt=True)
                assert subword.verify_certificate(cert)
                print(f"  {show(block)}\tx={cert.x}\tk={cert.trace['k']}")
            if missing:
                print(f"  closed {len(missing)} blocks in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
