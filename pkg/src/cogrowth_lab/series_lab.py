"""Truncated power series over Q, P-recurrences, and recurrence guessing.

Everything here is exact (``fractions.Fraction``); no floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

Number = int | Fraction


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedSeries:
    """The prefix a_0 .. a_{N-1} of a power series; N is the order."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, coeffs: Sequence[Number], order: int | None = None) -> TruncatedSeries:
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * order)[:order]
        return cls(tuple(cs))

    @classmethod
    def monomial(cls, k: int, order: int, coeff: Number = 1) -> TruncatedSeries:
        cs = [Fraction(0)] * order
        if k < order:
            cs[k] = Fraction(coeff)
        return cls(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs[:order])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def scale(self, c: Number) -> TruncatedSeries:
        return TruncatedSeries(tuple(Fraction(c) * a for a in self.coeffs))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other[j]
        return TruncatedSeries(tuple(out))

    def reciprocal(self) -> TruncatedSeries:
        if self.order == 0 or self[0] == 0:
            raise SeriesError("reciprocal needs a nonzero constant term")
        inv0 = 1 / self[0]
        out = [inv0]
        for n in range(1, self.order):
            s = sum(self[k] * out[n - k] for k in range(1, n + 1))
            out.append(-s * inv0)
        return TruncatedSeries(tuple(out))

    def __truediv__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self * other.reciprocal()

    def compose(self, inner: TruncatedSeries) -> TruncatedSeries:
        """self(inner(z)); inner must have zero constant term."""
        if inner.order and inner[0] != 0:
            raise SeriesError("composition needs inner(0) = 0")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = TruncatedSeries.of([], n)
        for a in reversed(self.coeffs[:n]):
            acc = acc * inner + TruncatedSeries.monomial(0, n, a)
        return acc

    def negate_z(self) -> TruncatedSeries:
        """A(-z)."""
        return TruncatedSeries(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))


def ts_arith(op: str, A: TruncatedSeries, B: TruncatedSeries | None = None) -> TruncatedSeries:
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    if op == "compose":
        return A.compose(B)
    if op == "reciprocal":
        return A.reciprocal()
    raise SeriesError(f"unknown series op {op!r}")


def even_part(A: TruncatedSeries) -> TruncatedSeries:
    """sum a_{2n} z^n."""
    return TruncatedSeries(A.coeffs[0::2])


def odd_part(A: TruncatedSeries) -> TruncatedSeries:
    """sum a_{2n+1} z^n."""
    return TruncatedSeries(A.coeffs[1::2])


# ---------------------------------------------------------------------------
# Polynomials in n (ascending coefficient lists) and recurrences


def poly_eval(p: Sequence[Number], n: Number) -> Number:
    acc: Number = 0
    for c in reversed(p):
        acc = acc * n + c
    return acc


def poly_substitute_affine(p: Sequence[Number], s: int, t: int) -> list[Number]:
    """Coefficients of q(n) = p(s*n + t)."""
    out: list[Number] = [0] * max(len(p), 1)
    # Horner in polynomial arithmetic: q = (...(c_d)(sn+t) + c_{d-1})...
    for c in reversed(p):
        nxt = [0] * len(out)
        for i, a in enumerate(out):
            if a:
                nxt[i] += a * t
                if i + 1 < len(nxt):
                    nxt[i + 1] += a * s
        nxt[0] += c
        out = nxt
    return out


@dataclass(frozen=True)
class Recurrence:
    """sum_i p_i(n) a_{n-i} = 0 for all n >= order; polys[i] holds p_i ascending in n."""

    polys: tuple[tuple[Number, ...], ...]

    def __post_init__(self):
        if not self.polys or not any(self.polys[0]):
            raise SeriesError("p_0 must be nonzero")

    @classmethod
    def of(cls, polys: Sequence[Sequence[Number]]) -> Recurrence:
        return cls(tuple(tuple(p) for p in polys))

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    @property
    def degree(self) -> int:
        return max(len(p) for p in self.polys) - 1

    def residual(self, seq: Sequence[Number], n: int) -> Number:
        return sum(poly_eval(p, n) * seq[n - i] for i, p in enumerate(self.polys))

    def to_json(self) -> list[list[int]]:
        return [[int(c) for c in p] for p in self.polys]


def check_recurrence(rec: Recurrence, seq: Sequence[Number]) -> int | None:
    """None when the recurrence holds for order <= n < len(seq), else the first failing n."""
    if len(seq) <= rec.order:
        raise SeriesError("sequence shorter than the recurrence order")
    for n in range(rec.order, len(seq)):
        if rec.residual(seq, n) != 0:
            return n
    return None


def extract_even(rec: Recurrence, odd: bool = False) -> Recurrence:
    """Recurrence for b_n = a_{2n} (or a_{2n+1}) from an even-shift recurrence.

    q_i(n) = p_{2i}(2n), respectively p_{2i}(2n + 1).
    """
    for j in range(1, rec.order + 1, 2):
        if any(rec.polys[j]):
            raise SeriesError(f"p_{j} is nonzero; only even shifts can be extracted")
    t = 1 if odd else 0
    return Recurrence.of([poly_substitute_affine(rec.polys[2 * i], 2, t) for i in range(rec.order // 2 + 1)])


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace by Gauss-Jordan elimination over Q."""
    M = [r[:] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def _normalize(vec: list[Fraction]) -> list[int]:
    den = reduce(math.lcm, (v.denominator for v in vec), 1)
    ints = [int(v * den) for v in vec]
    g = reduce(math.gcd, ints, 0) or 1
    return [x // g for x in ints]


def guess_recurrence(
    seq: Sequence[Number], max_order: int, max_degree: int, step: int = 1, holdout: int = 5
) -> Recurrence | None:
    """Smallest (order, degree) P-recurrence fitting ``seq``, or None.

    Fits on all but the last ``holdout`` equations and then re-checks the
    candidate on every term. ``step=2`` restricts to even shifts
    (a_n, a_{n-2}, ...), in which case ``max_order`` counts shifts.
    Raises SeriesError when even the smallest requested system would not be
    overdetermined by at least ``holdout`` equations.
    """
    seq = [Fraction(v) for v in seq]
    widest = (max_order + 1) * (max_degree + 1)
    if len(seq) - max_order * step - holdout < widest:
        raise SeriesError("not enough terms for the requested bounds")
    for order in range(1, max_order + 1):
        span = order * step
        for deg in range(max_degree + 1):
            ncols = (order + 1) * (deg + 1)
            rows = []
            for n in range(span, len(seq) - holdout):
                row = []
                for i in range(order + 1):
                    a = seq[n - i * step]
                    row.extend(a * n**e for e in range(deg + 1))
                rows.append(row)
            for vec in _nullspace(rows, ncols):
                coeffs = _normalize(vec)
                polys = [coeffs[i * (deg + 1) : (i + 1) * (deg + 1)] for i in range(order + 1)]
                if not any(polys[0]):
                    continue
                lead = next(c for c in reversed(polys[0]) if c)
                if lead < 0:
                    polys = [[-c for c in p] for p in polys]
                full = []
                for i, p in enumerate(polys):
                    full.append(p)
                    if i < order:
                        full.extend([[0] * (deg + 1)] * (step - 1))
                rec = Recurrence.of(full)
                if check_recurrence(rec, seq) is None:
                    return rec
    return None


# ---------------------------------------------------------------------------
# Cogrowth substitution identity


@dataclass
class CogrowthReport:
    order: int
    lhs: list[Fraction]
    rhs: list[Fraction]
    first_mismatch: int | None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None


def cogrowth_check(R_prefix: Sequence[Number], Gamma_prefix: Sequence[Number], N: int) -> CogrowthReport:
    """Compare R(z)/(1-z^2) with Gamma(z/(1+z^2))/(1+z^2) through z^N.

    Reports rather than asserts: the first index where the two sides differ
    (if any) is returned with both coefficient lists.
    """
    order = N + 1
    if len(R_prefix) < order or len(Gamma_prefix) < order:
        raise SeriesError("prefixes shorter than the requested order")
    R = TruncatedSeries.of(R_prefix[:order])
    G = TruncatedSeries.of(Gamma_prefix[:order])
    one_minus = TruncatedSeries.of([1, 0, -1], order)
    one_plus = TruncatedSeries.of([1, 0, 1], order)
    lhs = R / one_minus
    inner = TruncatedSeries.of([0, 1], order) / one_plus
    rhs = G.compose(inner) / one_plus
    mismatch = next((n for n in range(order) if lhs[n] != rhs[n]), None)
    return CogrowthReport(N, list(lhs.coeffs), list(rhs.coeffs), mismatch)
