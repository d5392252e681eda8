"""Subword complexity, saturation scans of f, and CRT witnesses.

Blocks over {+1, -1} are encoded as integers with +1 -> 0, -1 -> 1 and the
first entry in the most significant bit.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import arith

MAX_BLOCK = 24
SCAN_LIMIT = 1 << 20


class BudgetExceeded(RuntimeError):
    """No verified witness within the k-budget; not a disproof."""


def _bits(seq) -> np.ndarray:
    arr = np.asarray(seq)
    if arr.dtype == bool:
        return arr.astype(np.uint8)
    vals = set(np.unique(arr).tolist())
    # a 0 marks 0/1 data; anything else is read as +-1, so all-ones means +1
    if 0 in vals and vals <= {0, 1}:
        return arr.astype(np.uint8)
    if vals <= {-1, 1}:
        return (arr == -1).astype(np.uint8)
    raise ValueError("sequence must be +-1 or 0/1 valued")


def encode_block(u: Sequence[int]) -> int:
    code = 0
    for v in u:
        code = (code << 1) | (1 if v == -1 else 0)
    return code


def decode_block(code: int, n: int) -> tuple[int, ...]:
    return tuple(-1 if (code >> (n - 1 - i)) & 1 else 1 for i in range(n))


@dataclass
class BlockSet:
    n: int
    present: np.ndarray  # bool, length 2**n

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.present))

    def missing(self) -> list[tuple[int, ...]]:
        return [decode_block(int(c), self.n) for c in np.flatnonzero(~self.present)]

    def __or__(self, other: BlockSet) -> BlockSet:
        return BlockSet(self.n, self.present | other.present)


def window_codes(bits: np.ndarray, n: int) -> np.ndarray:
    L = len(bits) - n + 1
    if L <= 0:
        return np.zeros(0, dtype=np.int64)
    codes = np.zeros(L, dtype=np.int64)
    for j in range(n):
        codes = (codes << 1) | bits[j : j + L]
    return codes


def block_set(seq, n: int) -> BlockSet:
    if not 1 <= n <= MAX_BLOCK:
        raise ValueError(f"block length must be in 1..{MAX_BLOCK}")
    present = np.zeros(1 << n, dtype=bool)
    present[window_codes(_bits(seq), n)] = True
    return BlockSet(n, present)


def complexity_profile(seq, n_max: int) -> list[int]:
    """[p(1), ..., p(n_max)]: number of distinct windows of each length."""
    if n_max > MAX_BLOCK:
        raise ValueError(f"n_max > {MAX_BLOCK} rejected")
    if len(seq) < n_max:
        raise ValueError("sequence shorter than n_max")
    bits = _bits(seq)
    return [block_set(bits, n).count for n in range(1, n_max + 1)]


def saturation_scan(n: int, X: int, f_values: np.ndarray | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Blocks of f seen in f(1..X): (count, missing blocks)."""
    if not 1 <= n <= 20:
        raise ValueError("saturation scans take 1 <= n <= 20")
    vals = f_values[:X] if f_values is not None else arith.f_sieve(X)
    bs = block_set(vals, n)
    return bs.count, bs.missing()


# ---------------------------------------------------------------------------
# Witnesses


@dataclass
class WitnessCertificate:
    block: tuple[int, ...]
    x: int
    trace: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"block": list(self.block), "x": str(self.x), "trace": self.trace}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> WitnessCertificate:
        d = json.loads(text)
        return cls(tuple(d["block"]), int(d["x"]), d.get("trace", {}))


def verify_certificate(cert: WitnessCertificate) -> bool:
    """Recompute f(x + i) for i = 1..n by factorization; the trace is ignored."""
    n = len(cert.block)
    if n == 0 or any(v not in (1, -1) for v in cert.block) or cert.x < 0:
        raise ValueError("malformed certificate")
    return all(arith.f_sign(cert.x + i) == u for i, u in enumerate(cert.block, start=1))


def prime_power_selector(n: int, count: int) -> list[tuple[int, int]]:
    """Distinct (p, 2) with p = 3 mod 4 and p > n; f(p^2) = p mod 4 = -1."""
    out = []
    p = n + 1
    while len(out) < count:
        if p % 4 == 3 and arith.is_prime(p):
            out.append((p, 2))
        p += 1
    return out


_CODE_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _prefix_codes(limit: int, n: int) -> np.ndarray:
    """Window codes of f(1..limit); position i holds the block starting at f(i + 1)."""
    if (limit, n) not in _CODE_CACHE:
        _CODE_CACHE[(limit, n)] = window_codes(_bits(arith.f_sieve(limit)), n)
    return _CODE_CACHE[(limit, n)]


def _try_candidate(x: int, block: Sequence[int], rho_budget: int) -> bool | None:
    """True/False when every f(x + i) could be decided, None when factoring gave up."""
    for i, u in enumerate(block, start=1):
        try:
            if arith.f_sign(x + i, rho_budget) != u:
                return False
        except arith.FactorizationBudgetError:
            return None
    return True


def crt_witness(
    block: Sequence[int],
    budget: int = 10_000,
    force_crt: bool = False,
    scan_limit: int = SCAN_LIMIT,
    rho_budget: int = 60_000,
) -> WitnessCertificate:
    """Find x >= 0 with f(x + i) = block[i-1] for i = 1..n.

    Unless ``force_crt``, the sieved prefix f(1..scan_limit) is searched
    first. Otherwise: I = {i : f(i) != u_i}; each i in I gets its own prime
    p_i = 3 mod 4 above n with exponent 2. The congruences x = 0 mod p^(m+1)
    for primes p <= n (m = floor(log_p n)) and x = p_i^2 - i mod p_i^3 pin
    x = k M + R, after which f(x + i) = f(i) f(p_i^2) f(cofactor) = u_i
    f(cofactor). Candidates k = 0, 1, ... are verified by factorization until
    one passes or ``budget`` candidates are spent.
    """
    block = tuple(int(v) for v in block)
    n = len(block)
    if not 1 <= n <= 10 or any(v not in (1, -1) for v in block):
        raise ValueError("block must have 1..10 entries in {+1, -1}")

    if not force_crt:
        hits = np.flatnonzero(_prefix_codes(scan_limit, n) == encode_block(block))
        if hits.size:
            return WitnessCertificate(block, int(hits[0]), {"method": "scan", "scan_limit": scan_limit})

    failures = [i for i in range(1, n + 1) if arith.f_sign(i) != block[i - 1]]
    chosen = dict(zip(failures, prime_power_selector(n, len(failures))))
    residues, moduli = [], []
    for p in arith.primes_upto(n):
        p = int(p)
        m = 0  # floor(log_p n)
        while p ** (m + 1) <= n:
            m += 1
        residues.append(0)
        moduli.append(p ** (m + 1))
    for i, (p, e) in chosen.items():
        residues.append(p**e - i)
        moduli.append(p ** (e + 1))
    M = math.prod(moduli)
    R = _crt(residues, moduli)
    skipped = 0
    for k in range(budget):
        x = k * M + R
        verdict = _try_candidate(x, block, rho_budget)
        if verdict is None:
            skipped += 1
        elif verdict:
            trace = {
                "method": "crt",
                "failure_set": failures,
                "prime_powers": {str(i): [p, e] for i, (p, e) in chosen.items()},
                "M": str(M),
                "R": str(R),
                "k": k,
                "unfactored_skips": skipped,
            }
            return WitnessCertificate(block, x, trace)
    raise BudgetExceeded(f"no verified witness for {block} within {budget} candidates")


def _crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        t = (r - x) * pow(M, -1, m) % m
        x += M * t
        M *= m
    return x % M


def random_blocks(count: int, n: int, seed: int) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    return [tuple(rng.choice((1, -1)) for _ in range(n)) for _ in range(count)]
