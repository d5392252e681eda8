"""Integer arithmetic kernel.

Primality, factorization, the square-root-of-square-part ``m(n)``, the
multiplicative sign ``f(n)``, and numpy sieves for bulk scans.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

SEGMENT = 1 << 24
TRIAL_BOUND = 1 << 12

# Catalan's constant G = L(2, chi_{-4}).
CATALAN_G = 0.915965594177219015054603514932384110774
DENSITY_LIMIT = 3 / 8 + 3 * CATALAN_G / math.pi**2


class FactorizationBudgetError(RuntimeError):
    """Raised when rho splitting exhausts its iteration budget."""


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


_SMALL = [int(p) for p in primes_upto(TRIAL_BOUND)]
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# The first 13 prime bases are a deterministic Miller-Rabin set below this.
_MR_DETERMINISTIC = 3_317_044_064_679_887_385_961_981


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters."""
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while _jacobi(D, n) != -1:
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U, V, Qk = 1, P, Q % n
    inv2 = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below ~3.3e24; Miller-Rabin on 13 bases plus strong Lucas above."""
    if n < 2:
        return False
    for p in _SMALL[:60]:
        if n % p == 0:
            return n == p
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC:
        return True
    return _strong_lucas(n)


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        r = integer_root(n, k)
        if r < 2:
            break
        if r**k == n:
            return r, k
    return None


def _brent_rho(n: int, rng: random.Random, budget: int | None) -> int:
    """Return a nontrivial factor of the odd composite n (Brent's cycle variant)."""
    spent = 0
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
            if budget is not None and spent > budget:
                raise FactorizationBudgetError(f"rho budget {budget} exhausted on {n}")
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    """Sorted (prime, exponent) pairs."""

    pairs: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def as_list(self) -> list[tuple[int, int]]:
        return list(self.pairs)


def factorize(n: int, rho_budget: int | None = None, seed: int = 1) -> Factorization:
    """Complete factorization of a positive integer.

    Trial division by primes below ``TRIAL_BOUND``, then perfect-power
    detection and Brent rho on the composite cofactors. ``rho_budget`` caps
    the rho iterations per split; exceeding it raises
    ``FactorizationBudgetError`` rather than returning a partial answer.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n!r}")
    counts: dict[int, int] = {}
    for p in _SMALL:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            counts[p] = e
    rng = random.Random(seed)
    stack = [(n, 1)] if n > 1 else []
    while stack:
        m, mult = stack.pop()
        if m < TRIAL_BOUND**2 or is_prime(m):
            # anything below TRIAL_BOUND**2 with no small factor is prime
            counts[m] = counts.get(m, 0) + mult
            continue
        pp = _perfect_power(m)
        if pp is not None:
            stack.append((pp[0], mult * pp[1]))
            continue
        d = _brent_rho(m, rng, rho_budget)
        stack.append((d, mult))
        stack.append((m // d, mult))
    return Factorization(tuple(sorted(counts.items())))


def nu2(n: int) -> int:
    if n < 1:
        raise ValueError("nu2 needs n >= 1")
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    return n >> nu2(n)


def m_of_n(n: int, fac: Factorization | None = None) -> int:
    """Largest m with m**2 dividing n."""
    if n < 1:
        raise ValueError("m_of_n needs n >= 1")
    fac = fac or factorize(n)
    out = 1
    for p, e in fac:
        out *= p ** (e // 2)
    return out


def f_sign(n: int, rho_budget: int | None = None) -> int:
    """The multiplicative sign m(odd part of n) mod 4, as +1 or -1."""
    o = odd_part(n)
    r = m_of_n(o, factorize(o, rho_budget)) % 4
    return 1 if r == 1 else -1


def f_pow2_odd(n: int) -> int:
    """Contrast sequence (n / 2**nu2(n)) mod 4 as +-1; automatic, not the f above."""
    return 1 if odd_part(n) % 4 == 1 else -1


def euler_phi(n: int, fac: Factorization | None = None) -> int:
    fac = fac or factorize(n)
    out = 1
    for p, e in fac:
        out *= (p - 1) * p ** (e - 1)
    return out


def divisors(fac: Factorization) -> list[int]:
    divs = [1]
    for p, e in fac:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def spf_table(limit: int) -> np.ndarray:
    """Smallest prime factor for 0..limit (0 and 1 map to themselves)."""
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.minimum(block, p, out=block)
    return spf


def factorize_with_spf(n: int, spf: np.ndarray) -> Factorization:
    counts: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        counts[p] = counts.get(p, 0) + 1
        n //= p
    return Factorization(tuple(sorted(counts.items())))


def gauss_identity_check(limit: int) -> int | None:
    """Check sum_{d | m} phi(d) == m for all m <= limit.

    Returns None on success, otherwise the first counterexample m.
    """
    spf = spf_table(limit)
    for m in range(1, limit + 1):
        fac = factorize_with_spf(m, spf)
        total = sum(euler_phi(d, factorize_with_spf(d, spf)) for d in divisors(fac))
        if total != m:
            return m
    return None


# ---------------------------------------------------------------------------
# Sieves


def m_segment(lo: int, hi: int, odd_only: bool = False, primes: np.ndarray | None = None) -> np.ndarray:
    """m(n) for lo <= n < hi (lo >= 1), via prime-square sieving.

    m(n) = prod_p p**#{j >= 1 : p**(2j) | n}, so multiplying every multiple of
    p**(2j) by p, for each j, builds m without factoring anything. With
    ``odd_only`` the prime 2 is skipped, which yields m(odd part of n).
    """
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    out = np.ones(hi - lo, dtype=np.int64)
    if primes is None:
        primes = primes_upto(math.isqrt(max(hi - 1, 1)))
    for p in primes:
        p = int(p)
        if odd_only and p == 2:
            continue
        q = p * p
        while q < hi:
            start = (-lo) % q
            out[start::q] *= p
            q *= p * p
    return out


def m_sieve(limit: int) -> np.ndarray:
    """Array of m(n) indexed by n for 0 <= n <= limit (entry 0 is 0)."""
    out = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        out[1:] = m_segment(1, limit + 1)
    return out


def f_sieve(limit: int, segment: int = SEGMENT) -> np.ndarray:
    """f(n) as int8 +-1 for n = 1..limit; element i holds f(i + 1)."""
    out = np.empty(limit, dtype=np.int8)
    primes = primes_upto(math.isqrt(max(limit, 1)))
    for lo in range(1, limit + 1, segment):
        hi = min(lo + segment, limit + 1)
        m = m_segment(lo, hi, odd_only=True, primes=primes)
        out[lo - 1 : hi - 1] = np.where(m % 4 == 1, 1, -1)
    return out


def density_counts(X: int, segment: int = SEGMENT) -> int:
    """#{n <= X : m(n) = 1 mod 4}, segmented so memory stays bounded."""
    if X < 1:
        raise ValueError("X must be >= 1")
    primes = primes_upto(math.isqrt(X))
    hits = 0
    for lo in range(1, X + 1, segment):
        hi = min(lo + segment, X + 1)
        hits += int(np.count_nonzero(m_segment(lo, hi, primes=primes) % 4 == 1))
    return hits


def density_scan(X: int, segment: int = SEGMENT) -> float:
    return density_counts(X, segment) / X


@dataclass
class QfScan:
    members: list[int]
    partial_sum: Fraction

    @property
    def decimal(self) -> float:
        return float(self.partial_sum)


def qf_scan(limit: int) -> QfScan:
    """Prime powers q <= limit with f(q) = -1, and the exact sum of 1/q.

    A bare prime has m(p) = 1, so only p**e with e >= 2 can qualify.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    members = []
    for p in primes_upto(math.isqrt(limit)):
        p = int(p)
        q = p * p
        while q <= limit:
            if f_sign(q) == -1:
                members.append(q)
            q *= p
    members.sort()
    return QfScan(members, sum((Fraction(1, q) for q in members), Fraction(0)))
