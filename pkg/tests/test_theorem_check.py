from __future__ import annotations

import json

import pytest

from cogrowth_lab import theorem_check as T
from cogrowth_lab.walk_engine import EXACT, mod2


@pytest.fixture(scope="module")
def exact_rows():
    return T.miracle_report(4, EXACT)


@pytest.fixture(scope="module")
def mod_rows():
    return T.miracle_report(5, mod2(24))


def test_s_coefficient_first_row():
    # r - r1 = 8^8 at length 8: only t^8 carries eight t's
    assert T.s_coefficient(0, 2**24 + 5, 5) == 4
    assert T.s_coefficient(0, 2**24 + 5, 5, bits=24) == 0
    assert T.s_coefficient(0, 2**24 + 5, 5, bits=30) == 4


def test_s_coefficient_flags_violation():
    with pytest.raises(T.CongruenceViolation):
        T.s_coefficient(1, 1 << 21, 0)
    with pytest.raises(ValueError):
        T.s_coefficient(0, 0, 0, bits=22)


def test_hand_rows_match(exact_rows, mod_rows):
    for rows in (exact_rows, mod_rows):
        assert rows[0].s_parity == 0 and rows[0].rhs == 0 and rows[0].match
        assert rows[1].r2 == 0 and rows[1].match
    assert exact_rows[0].s_j == 4


def test_rows_reproducible_across_lanes(exact_rows, mod_rows):
    for e, m in zip(exact_rows, mod_rows):
        assert e.r_mod23 == m.r_mod23 and e.r1_mod23 == m.r1_mod23
        assert e.s_j % 4 == m.s_j
        assert e.match == m.match
        assert e.r2 % 2**24 == m.r2


def test_internal_invariants(exact_rows, mod_rows):
    assert T.internal_problems(exact_rows) == []
    assert T.internal_problems(mod_rows) == []
    for row in exact_rows:
        assert row.length == 4 * row.j + 8
        assert row.rhs in (0, 1)


def test_r2_expanded_reading_matches_counts(exact_rows):
    # exact-lane counts agree with the formula summed over every solution
    for row in exact_rows:
        assert row.r2_expanded_ok
    assert exact_rows[2].r2 == 8**6 * 24
    assert exact_rows[4].r2 == 8**6 * 432
    assert not exact_rows[4].r2_representative_ok


def test_json_report_uses_strings(mod_rows):
    data = json.loads(T.report_json(mod_rows))
    assert len(data) == 6
    assert data[0]["match"] is True
    assert isinstance(data[0]["r_mod23"], str)


def test_rejects_small_modulus():
    with pytest.raises(ValueError):
        T.miracle_report(1, mod2(20))
