"""Assemble the S(z) coefficients from reduced-word counts and test their parity.

For j >= 0 and length L = 4j + 8,

    s_j = (r(L) - r1(L) - 2^21 * 3 * floor(j/2)) / 2^22,

and the congruence chain predicts s_j = (m(2j+1) - 1)/2 (mod 2). Rows are
reported, never forced: a mismatch is surfaced with the full r1/r2/r3 split.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from . import arith, diophantine
from .walk_engine import Ring, count_reduced_split, mod2

MOD23 = 1 << 23
SHIFT = 1 << 22


class CongruenceViolation(ArithmeticError):
    pass


@dataclass
class MiracleRow:
    j: int
    length: int
    r_mod23: int
    r1_mod23: int
    r2: int  # in the run ring
    r3: int
    s_j: int  # exact, or mod 2^(K-22) on a modular lane
    s_parity: int
    m: int
    rhs: int
    match: bool
    divisible: bool
    r3_ok: bool
    r2_expanded: int
    r2_representative: int
    r2_expanded_ok: bool
    r2_representative_ok: bool

    def to_json_dict(self) -> dict:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, int) and not isinstance(v, bool):
                d[k] = str(v)
        return d


def s_coefficient(j: int, r_val: int, r1_val: int, bits: int | None = None) -> int:
    """s_j from r(4j+8) and r1(4j+8) given mod 2^bits (bits >= 23) or exactly (bits=None).

    Returns s_j mod 2^(bits-22), or the integer itself on exact input. Raises
    CongruenceViolation when the numerator is not a multiple of 2^22.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    num = r_val - r1_val - (1 << 21) * 3 * (j // 2)
    if bits is not None:
        if bits < 23:
            raise ValueError("need residues mod 2^K with K >= 23")
        num %= 1 << bits
    if num % SHIFT:
        raise CongruenceViolation(f"j={j}: numerator {num} is not divisible by 2^22")
    s = num // SHIFT
    return s % (1 << (bits - 22)) if bits is not None else s


def miracle_report(j_max: int = 5, ring: Ring = mod2(24), **kw) -> list[MiracleRow]:
    """One row per j <= j_max from a single reduced-split run to length 4 j_max + 8."""
    if ring.kind == "float" or (ring.kind == "mod" and ring.bits < 23):
        raise ValueError("theorem checks need the exact ring or mod 2^K with K >= 23")
    bits = ring.bits if ring.kind == "mod" else None
    r, r1, r2, r3 = count_reduced_split(4 * j_max + 8, ring, **kw)
    rows = []
    for j in range(j_max + 1):
        L = 4 * j + 8
        try:
            s = s_coefficient(j, r[L], r1[L], bits)
            divisible = True
        except CongruenceViolation:
            s, divisible = -1, False
        m = arith.m_of_n(2 * j + 1)
        rhs = ((m - 1) // 2) % 2
        ell = 2 * j + 1
        exp_ = diophantine.r2_formula(ell, "expanded")
        rep = diophantine.r2_formula(ell, "representative")
        rows.append(
            MiracleRow(
                j=j,
                length=L,
                r_mod23=r[L] % MOD23,
                r1_mod23=r1[L] % MOD23,
                r2=r2[L],
                r3=r3[L],
                s_j=s,
                s_parity=s % 2 if divisible else -1,
                m=m,
                rhs=rhs,
                match=divisible and s % 2 == rhs,
                divisible=divisible,
                r3_ok=r3[L] % MOD23 == 0,
                r2_expanded=exp_,
                r2_representative=rep,
                r2_expanded_ok=ring.reduce(exp_) == r2[L],
                r2_representative_ok=ring.reduce(rep) == r2[L],
            )
        )
    return rows


def internal_problems(rows: list[MiracleRow]) -> list[str]:
    """Non-reported invariants; an empty list means exit code 0."""
    out = []
    for row in rows:
        if not row.divisible:
            out.append(f"j={row.j}: 2^22 does not divide the numerator")
        if not row.r3_ok:
            out.append(f"j={row.j}: r3 not divisible by 2^23")
    return out


def report_json(rows: list[MiracleRow]) -> str:
    return json.dumps([row.to_json_dict() for row in rows], indent=2, sort_keys=True)


def report_tsv(rows: list[MiracleRow]) -> str:
    cols = list(MiracleRow.__dataclass_fields__)
    lines = ["\t".join(cols)]
    for row in rows:
        lines.append("\t".join(str(int(v)) if isinstance(v, bool) else str(v) for v in asdict(row).values()))
    return "\n".join(lines) + "\n"
