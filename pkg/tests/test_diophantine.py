from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cogrowth_lab import diophantine as D


def test_small_sets():
    assert D.count_Sn(5) == 0 and D.enumerate_Sn(5) == []
    assert [s.quad for s in D.enumerate_Sn(4)] == [(1, 1, 1, 1)]
    assert [D.count_Sn(n) for n in (4, 6, 8, 9)] == [1, 4, 5, 4]
    assert len(D.enumerate_Sn(6)) == 4


def test_fast_equals_brute():
    for n in range(1, 80):
        fast = sorted(s.quad for s in D.enumerate_Sn(n))
        brute = sorted(s.quad for s in D.enumerate_Sn(n, "brute"))
        assert fast == brute
        assert D.count_Sn(n) == len(fast) == D.count_Sn_quadratic(n)


@given(st.integers(4, 150))
def test_involutions_preserve_Sn(n):
    S = {s.quad for s in D.enumerate_Sn(n)}
    for q in S:
        assert D.sigma(q) in S and D.tau(q) in S
        assert D.sigma(D.sigma(q)) == q and D.tau(D.tau(q)) == q
        assert 8 % len(D.orbit(q)) == 0


@given(st.integers(1, 600))
def test_orbit_decomposition(n):
    st_ = D.orbit_decompose(n)
    assert st_.closed_forms_ok
    assert st_.reconstructed() == st_.total == D.count_Sn(n)
    assert st_.residual() % 8 == 0 and st_.residual() >= 0


def test_orbit_metadata():
    for s in D.enumerate_Sn(9):
        assert s.orbit_id == (1, 4, 2, 2) and s.orbit_size == 4
    assert D.orbit_type((1, 2, 1, 2)) == "abab"
    assert D.orbit_type((1, 1, 1, 1)) == "aaaa"


def test_abcc_examples():
    for method in ("brute", "totient", "closed_form"):
        assert D.count_abcc(9, method) == 1
        assert D.count_abcc(36, method) == 2
        assert D.count_abcc(4, method) == 0


def test_abcc_tables_agree():
    brute = D.abcc_brute_table(3000)
    assert (brute[1:] == D.abcc_totient_table(3000)[1:]).all()
    assert (brute[1:] == D.abcc_closed_form_table(3000)[1:]).all()
    assert all(brute[n] == D.count_abcc(n, "brute") for n in range(1, 400))


def test_r2_formula():
    assert D.r2_formula(1) == 0
    assert D.r2_formula(4) == 8**6 * 28
    assert D.r2_formula(5) == 8**6 * 24
    assert D.r2_formula(9, "expanded") == 8**6 * 432
    assert D.r2_formula(9, "representative") == 8**6 * 276
    with pytest.raises(ValueError):
        D.r2_formula(3, "other")
