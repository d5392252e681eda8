"""Positive solutions of a + b + c + d = n, ab = cd, and their dihedral orbits.

Every solution factors uniquely as (a, b, c, d) = (xy, zw, xz, yw) with
x = gcd(a, c) and gcd(y, z) = 1, and then n = (x + w)(y + z). The fast
enumerator walks these parameters, so its cost is proportional to |S_n|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import arith

Quad = tuple[int, int, int, int]


def sigma(q: Quad) -> Quad:
    a, b, c, d = q
    return (a, b, d, c)


def tau(q: Quad) -> Quad:
    a, b, c, d = q
    return (c, d, a, b)


def orbit(q: Quad) -> frozenset[Quad]:
    """Orbit under the group generated by sigma and tau: swap within pairs, swap the pairs."""
    a, b, c, d = q
    return frozenset(
        {(a, b, c, d), (a, b, d, c), (b, a, c, d), (b, a, d, c),
         (c, d, a, b), (d, c, a, b), (c, d, b, a), (d, c, b, a)}
    )


def orbit_type(rep: Quad) -> str:
    """One of 'aaaa', 'abab', 'abcc', 'free' for a lexicographically minimal representative."""
    a, b, c, d = rep
    if a == b == c == d:
        return "aaaa"
    if a == c and b == d:
        return "abab"
    if c == d or a == b:
        return "abcc"
    return "free"


@dataclass(frozen=True)
class SolutionQuad:
    a: int
    b: int
    c: int
    d: int
    orbit_id: Quad  # lexicographically smallest member
    orbit_size: int

    @property
    def quad(self) -> Quad:
        return (self.a, self.b, self.c, self.d)


def _fast_quads(n: int) -> list[Quad]:
    out = []
    for u in range(2, n + 1):
        if n % u:
            continue
        v = n // u
        if v < 2:
            continue
        coprime = [y for y in range(1, v) if math.gcd(y, v) == 1]
        for x in range(1, u):
            w = u - x
            for y in coprime:
                z = v - y
                out.append((x * y, z * w, x * z, y * w))
    return sorted(out)


def _brute_quads(n: int) -> list[Quad]:
    out = []
    for a in range(1, n):
        for b in range(1, n - a):
            for c in range(1, n - a - b):
                d = n - a - b - c
                if a * b == c * d:
                    out.append((a, b, c, d))
    return out


def enumerate_Sn(n: int, method: str = "fast") -> list[SolutionQuad]:
    if n < 1:
        raise ValueError("n must be >= 1")
    if method == "fast":
        quads = _fast_quads(n)
    elif method == "brute":
        if n > 300:
            raise ValueError("brute enumeration is for n <= 300")
        quads = _brute_quads(n)
    else:
        raise ValueError(f"unknown method {method!r}")
    reps: dict[Quad, tuple[Quad, int]] = {}
    out = []
    for q in quads:
        if q not in reps:
            orb = orbit(q)
            info = (min(orb), len(orb))
            for p in orb:
                reps[p] = info
        rep, size = reps[q]
        out.append(SolutionQuad(*q, rep, size))
    return out


def count_Sn(n: int) -> int:
    """|S_n| = sum over n = u v of (u - 1) phi(v), v >= 2."""
    total = 0
    for u in range(1, n + 1):
        if n % u == 0 and n // u >= 2:
            v = n // u
            total += (u - 1) * arith.euler_phi(v)
    return total


def count_Sn_quadratic(n: int) -> int:
    """Direct count: for each (a, b), (c, d) are the roots of t^2 - s t + ab."""
    if n < 4:
        return 0
    a = np.arange(1, n, dtype=np.int64)
    A, B = np.meshgrid(a, a, indexing="ij")
    s = n - A - B
    ok = s >= 2
    A, B, s = A[ok], B[ok], s[ok]
    disc = s * s - 4 * A * B
    good = disc >= 0
    s, disc = s[good], disc[good]
    r = np.rint(np.sqrt(disc.astype(np.float64))).astype(np.int64)
    square = (r * r == disc) & ((s - r) % 2 == 0) & (s - r >= 2)
    return int(np.count_nonzero(square & (r == 0)) + 2 * np.count_nonzero(square & (r > 0)))


@dataclass
class OrbitStats:
    n: int
    total: int
    aaaa: int
    abab: int
    abcc: int
    free: int
    closed_forms_ok: bool

    def reconstructed(self) -> int:
        return self.aaaa + 4 * self.abab + 4 * self.abcc + 8 * self.free

    def residual(self) -> int:
        """|S_n| minus the closed-form fixed point, abab and abcc contributions."""
        return (
            self.total
            - int(self.n % 4 == 0)
            - 4 * int(self.n % 2 == 0) * ((self.n - 1) // 4)
            - 4 * count_abcc(self.n, "closed_form")
        )


def orbit_decompose(n: int, method: str = "fast") -> OrbitStats:
    if method == "fast":
        quads = _fast_quads(n)
    else:
        quads = [s.quad for s in enumerate_Sn(n, method)]
    reps: dict[Quad, int] = {}
    for q in quads:
        orb = orbit(q)
        reps[min(orb)] = len(orb)
    kinds = {"aaaa": 0, "abab": 0, "abcc": 0, "free": 0}
    expected_size = {"aaaa": 1, "abab": 4, "abcc": 4, "free": 8}
    sizes_ok = True
    for rep, size in reps.items():
        k = orbit_type(rep)
        kinds[k] += 1
        sizes_ok &= size == expected_size[k]
    ok = (
        sizes_ok
        and kinds["aaaa"] == int(n % 4 == 0)
        and kinds["abab"] == int(n % 2 == 0) * ((n - 1) // 4)
    )
    return OrbitStats(n, len(quads), kinds["aaaa"], kinds["abab"], kinds["abcc"], kinds["free"], ok)


def _abcc_brute(n: int) -> int:
    count = 0
    for c in range(1, n // 2 + 1):
        s = n - 2 * c
        disc = s * s - 4 * c * c
        if disc <= 0:
            continue
        r = math.isqrt(disc)
        if r * r == disc and (s - r) % 2 == 0 and s - r > 0:
            count += 1
    return count


def count_abcc(n: int, method: str = "closed_form") -> int:
    """#{(a, b, c) : a + b + 2c = n, ab = c^2, a < b}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if method == "brute":
        return _abcc_brute(n)
    if method == "totient":
        total = sum(arith.euler_phi(z) for z in range(3, math.isqrt(n) + 1) if n % (z * z) == 0)
        if total % 2:
            raise ArithmeticError(f"odd totient sum at n={n}")
        return total // 2
    if method == "closed_form":
        top = arith.m_of_n(n) - 1 - int(n % 4 == 0)
        return top // 2
    raise ValueError(f"unknown method {method!r}")


def abcc_brute_table(N: int) -> np.ndarray:
    """count_abcc for every n <= N at once, by enumerating (a, c) with a < c and a | c^2."""
    out = np.zeros(N + 1, dtype=np.int64)
    for c in range(2, N // 2 + 1):
        a = np.arange(1, c, dtype=np.int64)
        a = a[(c * c) % a == 0]
        n = a + (c * c) // a + 2 * c
        n = n[n <= N]
        np.add.at(out, n, 1)
    return out


def abcc_totient_table(N: int) -> np.ndarray:
    """Totient form for every n <= N: half the sum of phi(z) over z >= 3 with z^2 | n."""
    phi = np.arange(math.isqrt(N) + 1, dtype=np.int64)
    for p in range(2, len(phi)):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    out = np.zeros(N + 1, dtype=np.int64)
    for z in range(3, len(phi)):
        out[z * z :: z * z] += phi[z]
    if np.any(out % 2):
        raise ArithmeticError("odd totient sum")
    return out // 2


def abcc_closed_form_table(N: int) -> np.ndarray:
    """(m(n) - 1 - [4 | n]) / 2 for every n <= N; entry 0 is unused."""
    m = arith.m_sieve(N).astype(np.int64)
    n = np.arange(N + 1)
    out = (m - 1 - (n % 4 == 0)) // 2
    out[0] = 0
    return out


def r2_formula(ell: int, reading: str = "expanded") -> int:
    """The printed count of six-t reduced trivial words of length 2*ell + 6.

    ``expanded`` sums 4 (2(a+c) + 3) over every member of S_ell;
    ``representative`` sums it over one (lexicographically smallest) member
    per dihedral orbit.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    sols = enumerate_Sn(ell)
    if reading == "expanded":
        members: Iterable[Quad] = (s.quad for s in sols)
    elif reading == "representative":
        members = sorted({s.orbit_id for s in sols})
    else:
        raise ValueError(f"unknown reading {reading!r}")
    shape = sum(4 * (2 * (a + c) + 3) for a, _, c, _ in members)
    tails = sum(4 * 6 * count_Sn(k) for k in range(1, ell))
    return 8**6 * (shape + tails)
