"""Weighted closed-walk enumeration on vH and H3.

The state of a walk is (automaton state, eps, a, b, c). The automaton tracks
whatever the count must distinguish: nothing for plain cogrowth counts, or
the t-statistics and the previous letter for reduced words. For each
(automaton state, eps) key the (a, b, c) counts live in a dense numpy box;
one step of the walk shifts those boxes by each letter's move.

Counting rings: residues mod 2**K come from a uint64 lane (wraparound is
exact mod 2**64). Exact integers come from that lane plus int64 lanes
modulo large primes, recombined by CRT. Floats give return probabilities.
"""
from __future__ import annotations

import itertools
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import arith
from .heis_core import H3_ALPHABET, IDENTITY, VH_ALPHABET, GENERATOR, Letter, vh_mul

DEFAULT_BUDGET = 4 << 30
BRUTE_FORCE_CAP = 12


class CapacityError(RuntimeError):
    """Requested run does not fit the memory budget."""


# ---------------------------------------------------------------------------
# Rings and tables


@dataclass(frozen=True)
class Ring:
    kind: str  # "exact" | "mod" | "float"
    bits: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "mod", "float"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod" and not 1 <= self.bits <= 64:
            raise ValueError("modular ring needs 1 <= K <= 64 (2**0 is rejected)")

    @property
    def modulus(self) -> int | None:
        return 1 << self.bits if self.kind == "mod" else None

    def reduce(self, v):
        return v % self.modulus if self.kind == "mod" else v

    def __str__(self) -> str:
        return f"mod2^{self.bits}" if self.kind == "mod" else self.kind


EXACT = Ring("exact")
FLOAT = Ring("float")


def mod2(bits: int) -> Ring:
    return Ring("mod", bits)


def parse_ring(text: str) -> Ring:
    """Accepts ``exact``, ``float``, ``mod24``, ``mod2^24``."""
    text = text.strip().lower()
    if text in ("exact", "float"):
        return Ring(text)
    m = re.fullmatch(r"mod(?:2\^)?(\d+)", text)
    if not m:
        raise ValueError(f"unknown ring {text!r}")
    return mod2(int(m.group(1)))


@dataclass
class CountTable:
    name: str
    ring: Ring
    values: list = field(default_factory=list)

    def __getitem__(self, ell: int):
        return self.values[ell]

    def __len__(self) -> int:
        return len(self.values)

    def reduced(self, ring: Ring) -> CountTable:
        return CountTable(self.name, ring, [ring.reduce(v) for v in self.values])


def tables_to_tsv(tables: Sequence[CountTable], params: str = "") -> str:
    ring = tables[0].ring
    lines = []
    if params:
        lines.append(f"# {params}")
    if ring.kind == "mod":
        lines.append(f"# ring=mod2^{ring.bits}")
    elif ring.kind == "float":
        lines.append("# ring=float")
    lines.append("\t".join(["ell"] + [t.name for t in tables]))
    for ell in range(len(tables[0])):
        lines.append("\t".join([str(ell)] + [_fmt(t[ell]) for t in tables]))
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(int(v))


def tables_from_tsv(text: str) -> list[CountTable]:
    ring = EXACT
    rows = []
    header = None
    for line in text.splitlines():
        if line.startswith("# ring="):
            ring = parse_ring(line[len("# ring=") :])
        elif line.startswith("#") or not line.strip():
            continue
        elif header is None:
            header = line.split("\t")
        else:
            rows.append(line.split("\t"))
    conv = float if ring.kind == "float" else int
    return [CountTable(name, ring, [conv(r[i]) for r in rows]) for i, name in enumerate(header) if i > 0]


# ---------------------------------------------------------------------------
# Generators and letter moves


@dataclass(frozen=True)
class GeneratorSet:
    weights: tuple[tuple[Letter, int], ...]

    def __post_init__(self):
        if any(w < 1 for _, w in self.weights):
            raise ValueError("weights must be >= 1")

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(l for l, _ in self.weights)

    def weight(self, letter: Letter) -> int:
        return dict(self.weights)[letter]

    @property
    def total(self) -> int:
        return sum(w for _, w in self.weights)


VH_S = GeneratorSet(((Letter.X, 1), (Letter.XINV, 1), (Letter.T, 8)))
H3_LAZY = GeneratorSet(tuple((l, 1) for l in H3_ALPHABET))


@dataclass(frozen=True)
class Move:
    da: int
    db: int
    shear: int  # c += shear * a (a taken before the move)
    toggle: bool


def letter_move(group: str, letter: Letter, eps: int) -> Move:
    if group == "VH":
        if letter is Letter.T:
            return Move(0, 0, 0, True)
        s = 1 if letter is Letter.X else -1
        if letter not in (Letter.X, Letter.XINV):
            raise ValueError(f"{letter} is not a vH letter")
        return Move(0, s, s, False) if eps else Move(s, 0, 0, False)
    if group == "H3":
        table = {
            Letter.X: Move(1, 0, 0, False),
            Letter.XINV: Move(-1, 0, 0, False),
            Letter.Y: Move(0, 1, 1, False),
            Letter.YINV: Move(0, -1, -1, False),
            Letter.E: Move(0, 0, 0, False),
        }
        return table[letter]
    raise ValueError(f"unknown group {group!r}")


# ---------------------------------------------------------------------------
# Automata


@dataclass(frozen=True)
class TStat:
    """t-statistics of a reduced vH word; t_count 8 stands for 'at least 8'."""

    t_count: int = 0
    has_tt: bool = False
    prev: Letter | None = None

    def classify(self) -> str:
        if self.t_count >= 8:
            return "r3"
        if self.t_count == 6 and not self.has_tt:
            return "r2"
        return "r1"


def tstat_step(s: TStat, letter: Letter) -> TStat | None:
    if letter is Letter.T:
        tc = min(s.t_count + 1, 8)
        tt = (s.has_tt or s.prev is Letter.T) and tc < 8
        return TStat(tc, tt, Letter.T)
    if (letter, s.prev) in ((Letter.X, Letter.XINV), (Letter.XINV, Letter.X)):
        return None
    return TStat(s.t_count, s.has_tt, letter)


@dataclass(frozen=True)
class Automaton:
    initial: Hashable
    step: Callable[[Hashable, Letter], Hashable | None]
    classify: Callable[[Hashable], str]
    labels: tuple[str, ...]


PLAIN = Automaton(0, lambda s, l: 0, lambda s: "c", ("c",))
REDUCED = Automaton(TStat(), tstat_step, TStat.classify, ("r1", "r2", "r3"))


# ---------------------------------------------------------------------------
# Bounds


def box_bounds(max_len: int, prune: bool) -> tuple[int, int]:
    """Half-widths (A, C) of the (a, b) and c axes.

    A word with p horizontal and q vertical steps has |c| <= p*q <= k**2/4
    after k letters. With pruning a state must also be reachable back to the
    identity in r = max_len - k letters, giving |a| + |b| <= r and
    |c| <= r**2/4, so the box shrinks to the worst case over k.
    """
    if not prune:
        return max_len, max_len * max_len // 4
    half = max_len // 2
    return half, half * half // 4


def estimate_bytes(n_keys: int, max_len: int, prune: bool) -> int:
    A, C = box_bounds(max_len, prune)
    # source and target generation, 8 bytes per cell
    return 2 * n_keys * (2 * A + 1) ** 2 * (2 * C + 1) * 8


def _reachable_keys(aut: Automaton, group: str, gens: GeneratorSet) -> list[tuple]:
    start = (aut.initial, 0)
    seen = {start}
    todo = [start]
    while todo:
        s, eps = todo.pop()
        for letter in gens.letters:
            s2 = aut.step(s, letter)
            if s2 is None:
                continue
            mv = letter_move(group, letter, eps)
            k = (s2, eps ^ int(mv.toggle))
            if k not in seen:
                seen.add(k)
                todo.append(k)
    return sorted(seen, key=repr)


# ---------------------------------------------------------------------------
# Dense engine


@dataclass(frozen=True)
class _Lane:
    kind: str  # "u64" | "prime" | "f64"
    modulus: int = 0

    @property
    def dtype(self):
        return {"u64": np.uint64, "prime": np.int64, "f64": np.float64}[self.kind]


def _shift_slices(d: int, n: int) -> tuple[slice, slice]:
    """(src, dst) slices moving index i to i + d along an axis of length n."""
    if d >= 0:
        return slice(0, n - d), slice(d, n)
    return slice(-d, n), slice(0, n + d)


def _accumulate(dst: np.ndarray, src: np.ndarray, w, mv: Move, A: int) -> None:
    n_ab, n_c = src.shape[0], src.shape[2]
    sa, da_ = _shift_slices(mv.da, n_ab)
    sb, db_ = _shift_slices(mv.db, n_ab)
    if mv.shear == 0:
        part = src[sa, sb, :]
        dst[da_, db_, :] += part if w == 1 else part * w
        return
    for i in range(sa.start, sa.stop):
        dc = mv.shear * (i - A)
        sc, dcs = _shift_slices(dc, n_c)
        if sc.start >= sc.stop:
            continue
        part = src[i, sb, sc]
        dst[i + mv.da, db_, dcs] += part if w == 1 else part * w


def _prune_mask(A: int, C: int, r: int) -> np.ndarray:
    a = np.abs(np.arange(-A, A + 1))
    c = np.abs(np.arange(-C, C + 1))
    ab = (a[:, None] + a[None, :]) <= r
    return ab[:, :, None] & (c <= r * r // 4)[None, None, :]


def _dense_lane(
    aut: Automaton,
    group: str,
    gens: GeneratorSet,
    max_len: int,
    lane: _Lane,
    prune: bool,
    threads: int,
) -> dict[str, list]:
    keys = _reachable_keys(aut, group, gens)
    A, C = box_bounds(max_len, prune)
    shape = (2 * A + 1, 2 * A + 1, 2 * C + 1)
    dtype = lane.dtype
    total_w = gens.total

    if lane.kind == "f64":
        weights = {l: gens.weight(l) / total_w for l in gens.letters}
    elif lane.kind == "u64":
        weights = {l: np.uint64(gens.weight(l)) for l in gens.letters}
    else:
        weights = {l: np.int64(gens.weight(l)) for l in gens.letters}

    # incoming transitions per target key, in a fixed order
    plan: dict[tuple, list] = {k: [] for k in keys}
    for key in keys:
        s, eps = key
        for letter in gens.letters:
            s2 = aut.step(s, letter)
            if s2 is None:
                continue
            mv = letter_move(group, letter, eps)
            plan[(s2, eps ^ int(mv.toggle))].append((key, weights[letter], mv))

    cur: dict[tuple, np.ndarray | None] = {k: None for k in keys}
    start = np.zeros(shape, dtype=dtype)
    start[A, A, C] = 1
    cur[(aut.initial, 0)] = start

    out = {lab: [0] * (max_len + 1) for lab in aut.labels}
    out[aut.classify(aut.initial)][0] = 1.0 if lane.kind == "f64" else 1

    def relax(target, mask):
        arr = None
        for src_key, w, mv in plan[target]:
            src = cur[src_key]
            if src is None:
                continue
            if arr is None:
                arr = np.zeros(shape, dtype=dtype)
            _accumulate(arr, src, w, mv, A)
        if arr is None:
            return None
        if lane.kind == "prime":
            np.remainder(arr, lane.modulus, out=arr)
        if mask is not None:
            arr *= mask
        return arr if arr.any() else None

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for k in range(1, max_len + 1):
            mask = _prune_mask(A, C, max_len - k).astype(dtype) if prune else None
            if pool is None:
                nxt = {t: relax(t, mask) for t in keys}
            else:
                nxt = dict(zip(keys, pool.map(lambda t: relax(t, mask), keys)))
            cur = nxt
            for (s, eps), arr in cur.items():
                if eps == 0 and arr is not None:
                    v = arr[A, A, C]
                    out[aut.classify(s)][k] += float(v) if lane.kind == "f64" else int(v)
    finally:
        if pool is not None:
            pool.shutdown()
    if lane.kind == "prime":
        out = {lab: [v % lane.modulus for v in vals] for lab, vals in out.items()}
    elif lane.kind == "u64":
        out = {lab: [v % (1 << 64) for v in vals] for lab, vals in out.items()}
    return out


_PRIMES: list[int] = []


def crt_primes(count: int) -> list[int]:
    """The ``count`` largest primes below 2**56 (residues times fan-in stay in int64)."""
    p = _PRIMES[-1] - 2 if _PRIMES else (1 << 56) - 1
    while len(_PRIMES) < count:
        if arith.is_prime(p):
            _PRIMES.append(p)
        p -= 2
    return _PRIMES[:count]


def _crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        t = (r - x) * pow(M, -1, m) % m
        x += M * t
        M *= m
    return x


# ---------------------------------------------------------------------------
# Sparse engine (fallback when the dense box does not fit)


def _sparse_run(aut, group, gens, max_len, ring: Ring, prune: bool, budget: int) -> dict[str, list]:
    if ring.kind == "float":
        weights = {l: gens.weight(l) / gens.total for l in gens.letters}
        zero, one = 0.0, 1.0
    else:
        weights = {l: gens.weight(l) for l in gens.letters}
        zero, one = 0, 1
    red = ring.reduce
    cur = {(aut.initial, 0, 0, 0, 0): one}
    out = {lab: [zero] * (max_len + 1) for lab in aut.labels}
    out[aut.classify(aut.initial)][0] = one
    for k in range(1, max_len + 1):
        r = max_len - k
        nxt: dict[tuple, object] = {}
        for (s, eps, a, b, c), v in cur.items():
            for letter in gens.letters:
                s2 = aut.step(s, letter)
                if s2 is None:
                    continue
                mv = letter_move(group, letter, eps)
                a2, b2, c2 = a + mv.da, b + mv.db, c + mv.shear * a
                if prune and (abs(a2) + abs(b2) > r or abs(c2) > r * r // 4):
                    continue
                key = (s2, eps ^ int(mv.toggle), a2, b2, c2)
                nxt[key] = red(nxt.get(key, zero) + v * weights[letter])
        if len(nxt) * 200 > budget:
            raise CapacityError(f"sparse table at step {k} exceeds memory budget")
        cur = nxt
        for (s, eps, a, b, c), v in cur.items():
            if eps == 0 and a == 0 and b == 0 and c == 0:
                lab = aut.classify(s)
                out[lab][k] = red(out[lab][k] + v)
    return out


# ---------------------------------------------------------------------------
# Public entry points


def _run(
    aut: Automaton,
    group: str,
    gens: GeneratorSet,
    max_len: int,
    ring: Ring,
    *,
    prune: bool = True,
    threads: int = 1,
    storage: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> dict[str, CountTable]:
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if storage not in ("auto", "dense", "sparse"):
        raise ValueError(f"unknown storage {storage!r}")
    n_keys = len(_reachable_keys(aut, group, gens))
    need = estimate_bytes(n_keys, max_len, prune)
    if storage == "auto":
        storage = "dense" if need <= budget else "sparse"
    if storage == "dense" and need > budget:
        raise CapacityError(f"dense tables need {need} bytes, budget is {budget}")

    if storage == "sparse":
        raw = _sparse_run(aut, group, gens, max_len, ring, prune, budget)
    elif ring.kind == "float":
        raw = _dense_lane(aut, group, gens, max_len, _Lane("f64"), prune, threads)
    elif ring.kind == "mod" and ring.bits <= 64:
        raw = _dense_lane(aut, group, gens, max_len, _Lane("u64"), prune, threads)
        raw = {lab: [ring.reduce(v) for v in vals] for lab, vals in raw.items()}
    else:
        # every count is at most total_weight**max_len
        bound = gens.total**max_len
        n_primes = 0
        while (1 << 64) * math.prod(crt_primes(n_primes)) <= bound:
            n_primes += 1
        primes = crt_primes(n_primes)
        lanes = [_dense_lane(aut, group, gens, max_len, _Lane("u64"), prune, threads)]
        lanes += [_dense_lane(aut, group, gens, max_len, _Lane("prime", p), prune, threads) for p in primes]
        moduli = [1 << 64] + primes
        raw = {
            lab: [_crt([lane[lab][ell] for lane in lanes], moduli) for ell in range(max_len + 1)]
            for lab in aut.labels
        }
    return {lab: CountTable(lab, ring, vals) for lab, vals in raw.items()}


def count_closed(
    gens: GeneratorSet = VH_S, group: str = "VH", max_len: int = 10, ring: Ring = EXACT, **kw
) -> CountTable:
    """Weighted closed walks: entry ell sums the weight products of trivial words of length ell."""
    return _run(PLAIN, group, gens, max_len, ring, **kw)["c"]


def count_reduced_split(max_len: int, ring: Ring = EXACT, **kw) -> tuple[CountTable, ...]:
    """(r, r1, r2, r3) for the generating multiset {x, x^-1, 8 t} on vH."""
    parts = _run(REDUCED, "VH", VH_S, max_len, ring, **kw)
    r = CountTable("r", ring, [ring.reduce(sum(vals)) for vals in zip(*(parts[l].values for l in ("r1", "r2", "r3")))])
    return r, parts["r1"], parts["r2"], parts["r3"]


def h3_lazy_ratio(ell: int, **kw) -> float:
    """ell**2 * c_ell / 5**ell for the lazy walk {x, x^-1, y, y^-1, e} on H3."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    p = count_closed(H3_LAZY, "H3", ell, FLOAT, **kw)[ell]
    return ell * ell * p


# ---------------------------------------------------------------------------
# Brute-force oracle


def _is_reduced(w: Sequence[Letter]) -> bool:
    for u, v in zip(w, w[1:]):
        if {u, v} == {Letter.X, Letter.XINV}:
            return False
    return True


def _t_split(w: Sequence[Letter]) -> str:
    n_t = sum(1 for l in w if l is Letter.T)
    tt = any(u is Letter.T and v is Letter.T for u, v in zip(w, w[1:]))
    if n_t >= 8:
        return "r3"
    if n_t == 6 and not tt:
        return "r2"
    return "r1"


def brute_force_closed(
    gens: GeneratorSet = VH_S, group: str = "VH", max_len: int = 8
) -> dict[str, CountTable]:
    """Exhaustive enumeration of alphabet**ell, independent of the DP.

    Words are evaluated with the group law from heis_core; reducedness and the
    t-split are read off the word itself. Returns tables c, r, r1, r2, r3 (the
    reduced ones only for vH).
    """
    if max_len > BRUTE_FORCE_CAP:
        raise CapacityError(f"brute force is capped at length {BRUTE_FORCE_CAP}")
    letters = gens.letters
    wt = dict(gens.weights)
    names = ("c", "r", "r1", "r2", "r3") if group == "VH" else ("c",)
    out = {n: [0] * (max_len + 1) for n in names}
    for ell in range(max_len + 1):
        for w in itertools.product(letters, repeat=ell):
            g = IDENTITY
            for l in w:
                g = vh_mul(g, GENERATOR[l])
            if not g.is_identity():
                continue
            weight = math.prod(wt[l] for l in w)
            out["c"][ell] += weight
            if group == "VH" and _is_reduced(w):
                out["r"][ell] += weight
                out[_t_split(w)][ell] += weight
    return {n: CountTable(n, EXACT, vals) for n, vals in out.items()}
