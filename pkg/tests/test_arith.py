from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cogrowth_lab import arith


def brute_m(n: int) -> int:
    return max(k for k in range(1, math.isqrt(n) + 1) if n % (k * k) == 0)


def test_factorize_examples():
    assert arith.factorize(72).as_list() == [(2, 3), (3, 2)]
    assert arith.factorize(1).as_list() == []
    mersenne = 2**61 - 1
    assert arith.factorize(mersenne).as_list() == [(mersenne, 1)]
    n = (2**31 - 1) * (2**61 - 1) ** 2 * 3
    assert arith.factorize(n).value() == n
    with pytest.raises(ValueError):
        arith.factorize(0)


@settings(max_examples=200)
@given(st.integers(1, 10**18))
def test_factorize_reassembles(n):
    fac = arith.factorize(n)
    assert fac.value() == n
    assert all(arith.is_prime(p) for p, _ in fac)


def test_is_prime_small_table():
    sieve = set(arith.primes_upto(10_000).tolist())
    assert all(arith.is_prime(n) == (n in sieve) for n in range(10_001))
    # strong pseudoprime to bases 2..37 region and a Carmichael number
    assert not arith.is_prime(3215031751)
    assert not arith.is_prime(561)
    assert arith.is_prime(2**89 - 1)
    assert not arith.is_prime((2**61 - 1) * (2**89 - 1))


def test_m_and_f_examples():
    assert arith.m_of_n(72) == 6
    assert arith.m_of_n(1) == 1
    assert arith.f_sign(9) == -1
    assert arith.f_sign(18) == -1
    assert arith.f_sign(4) == 1
    assert arith.f_sign(25) == 1
    assert arith.f_sign(81) == 1


def test_m_sieve_against_brute():
    m = arith.m_sieve(5000)
    assert all(m[n] == brute_m(n) for n in range(1, 5001))


@given(st.integers(1, 10**6))
def test_m_of_n_against_sieve(n):
    assert arith.m_of_n(n) == brute_m(n)


def test_f_sieve_matches_pointwise():
    fs = arith.f_sieve(3000, segment=257)
    assert all(fs[n - 1] == arith.f_sign(n) for n in range(1, 3001))


def test_f_multiplicative_on_random_coprime_pairs():
    rng = random.Random(7)
    done = 0
    while done < 2000:
        a, b = rng.randint(1, 10**6), rng.randint(1, 10**6)
        if math.gcd(a, b) != 1:
            continue
        assert arith.f_sign(a * b) == arith.f_sign(a) * arith.f_sign(b)
        done += 1


def _squarefree(n: int) -> bool:
    return all(e == 1 for _, e in arith.factorize(n))


@given(st.integers(1, 10**5), st.integers(1, 300))
def test_m_scales_by_square(n, k):
    if math.gcd(n, k) != 1 or not _squarefree(n):
        return
    assert arith.m_of_n(n * k * k) == arith.m_of_n(n) * k


def test_primes_3_mod_4_square_to_minus_one():
    for p in arith.primes_upto(1000).tolist():
        if p % 4 == 3:
            assert arith.f_sign(p * p) == -1


def test_gauss_identity_small():
    assert arith.gauss_identity_check(3000) is None


def test_euler_phi():
    assert [arith.euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_density_small():
    # below 11, m(n) = 1 mod 4 fails at 4, 8 (m = 2) and 9 (m = 3)
    assert arith.density_counts(10) == 7
    assert arith.density_scan(10) == pytest.approx(0.7)
    assert arith.density_scan(1) == 1.0


def test_density_segmented_agrees():
    assert arith.density_counts(100_000, segment=4099) == arith.density_counts(100_000)


def test_qf_scan():
    q = arith.qf_scan(50)
    assert q.members == [9, 27, 49]
    assert q.partial_sum == Fraction(1, 9) + Fraction(1, 27) + Fraction(1, 49)
    assert arith.qf_scan(2).members == []
    assert arith.qf_scan(2).partial_sum == 0


def test_qf_scan_monotone_and_bounded():
    sums = [arith.qf_scan(10**k).partial_sum for k in range(2, 7)]
    assert sums == sorted(sums)
    assert sums[-1] < Fraction(1, 4)


def test_factorization_budget():
    n = (2**61 - 1) * (2**89 - 1)
    with pytest.raises(arith.FactorizationBudgetError):
        arith.factorize(n, rho_budget=10)


def test_spf_factorization():
    spf = arith.spf_table(1000)
    for n in range(1, 1001):
        assert arith.factorize_with_spf(n, spf) == arith.factorize(n)
    assert np.all(arith.primes_upto(1) == np.array([], dtype=np.int64))
