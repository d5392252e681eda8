"""Exact arithmetic in H3(Z) and vH = H3(Z) x| C2.

Coordinates: x = (1, 0, 0), y = (0, 1, 0) and the product
(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b'), which is the
product of upper unitriangular matrices [[1, a, c], [0, 1, b], [0, 0, 1]].
Appending y therefore adds the current a to c. The generator t acts by the
automorphism ``flip`` that swaps x and y.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class HeisElement:
    a: int = 0
    b: int = 0
    c: int = 0

    def __mul__(self, other: HeisElement) -> HeisElement:
        return heis_mul(self, other)

    def inverse(self) -> HeisElement:
        return HeisElement(-self.a, -self.b, self.a * self.b - self.c)

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0


def heis_mul(h1: HeisElement, h2: HeisElement) -> HeisElement:
    return HeisElement(h1.a + h2.a, h1.b + h2.b, h1.c + h2.c + h1.a * h2.b)


def flip(h: HeisElement) -> HeisElement:
    """Conjugation by t: x <-> y, hence [x, y] -> [y, x] = [x, y]^-1."""
    return HeisElement(h.b, h.a, h.a * h.b - h.c)


@dataclass(frozen=True)
class VHElement:
    h: HeisElement = HeisElement()
    eps: int = 0

    def __mul__(self, other: VHElement) -> VHElement:
        return vh_mul(self, other)

    def is_identity(self) -> bool:
        return self.eps == 0 and self.h.is_identity()


def vh_mul(g1: VHElement, g2: VHElement) -> VHElement:
    h2 = flip(g2.h) if g1.eps else g2.h
    return VHElement(g1.h * h2, g1.eps ^ g2.eps)


IDENTITY = VHElement()


class Letter(enum.Enum):
    X = "x"
    XINV = "X"
    Y = "y"
    YINV = "Y"
    T = "t"
    E = "e"


Word = Sequence[Letter]

VH_ALPHABET = (Letter.X, Letter.XINV, Letter.T)
H3_ALPHABET = (Letter.X, Letter.XINV, Letter.Y, Letter.YINV, Letter.E)

GENERATOR = {
    Letter.X: VHElement(HeisElement(1, 0, 0)),
    Letter.XINV: VHElement(HeisElement(-1, 0, 0)),
    Letter.Y: VHElement(HeisElement(0, 1, 0)),
    Letter.YINV: VHElement(HeisElement(0, -1, 0)),
    Letter.T: VHElement(HeisElement(), 1),
    Letter.E: IDENTITY,
}

_TOKEN = re.compile(r"\s*([xXyYte])(?:\^?(-?\d+))?\s*")


def parse_word(text: str) -> tuple[Letter, ...]:
    """Parse words like ``"x^2 y^4 x^-2"``, ``"t x t"`` or ``"xXtt"``.

    Lowercase letters are generators, uppercase X/Y their inverses, and an
    optional (possibly negative) exponent repeats the letter.
    """
    out: list[Letter] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word at {text[pos:]!r}")
        letter, exp = Letter(m.group(1)), int(m.group(2)) if m.group(2) else 1
        if exp < 0:
            # t and e are involutions / trivial
            letter = _INVERSE.get(letter, letter)
            exp = -exp
        out.extend([letter] * exp)
        pos = m.end()
    return tuple(out)


_INVERSE = {Letter.X: Letter.XINV, Letter.XINV: Letter.X, Letter.Y: Letter.YINV, Letter.YINV: Letter.Y}


def format_word(w: Iterable[Letter]) -> str:
    return "".join(letter.value for letter in w)


def eval_word(w: Iterable[Letter]) -> VHElement:
    g = IDENTITY
    for letter in w:
        g = g * GENERATOR[letter]
    return g


# ---------------------------------------------------------------------------
# SL3(Z) embedding

Matrix = tuple[tuple[int, ...], ...]

SL3_IMAGE: dict[Letter, Matrix] = {
    Letter.X: ((1, 1, 0), (0, 1, 1), (0, 0, 1)),
    Letter.Y: ((1, 1, 0), (0, 1, -1), (0, 0, 1)),
    Letter.T: ((-1, 0, 0), (0, -1, 0), (0, 0, 1)),
}
ID3: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def mat_inv_unipotent(A: Matrix) -> Matrix:
    """Inverse of an upper unitriangular 3x3 integer matrix."""
    (_, p, q), (_, _, r) = A[0], A[1]
    return ((1, -p, p * r - q), (0, 1, -r), (0, 0, 1))


def mat_pow(A: Matrix, k: int) -> Matrix:
    if k < 0:
        A, k = mat_inv_unipotent(A), -k
    out = ID3
    while k:
        if k & 1:
            out = mat_mul(out, A)
        A = mat_mul(A, A)
        k >>= 1
    return out


SL3_IMAGE[Letter.XINV] = mat_inv_unipotent(SL3_IMAGE[Letter.X])
SL3_IMAGE[Letter.YINV] = mat_inv_unipotent(SL3_IMAGE[Letter.Y])
SL3_IMAGE[Letter.E] = ID3
_Z = mat_mul(
    mat_mul(SL3_IMAGE[Letter.X], SL3_IMAGE[Letter.Y]),
    mat_mul(SL3_IMAGE[Letter.XINV], SL3_IMAGE[Letter.YINV]),
)


def to_sl3(g: VHElement) -> Matrix:
    """Matrix of g via the normal form x^a y^b [x,y]^(c - ab) t^eps."""
    a, b, c = g.h.a, g.h.b, g.h.c
    M = mat_mul(mat_pow(SL3_IMAGE[Letter.X], a), mat_pow(SL3_IMAGE[Letter.Y], b))
    M = mat_mul(M, mat_pow(_Z, c - a * b))
    if g.eps:
        M = mat_mul(M, SL3_IMAGE[Letter.T])
    return M


def sl3_direct(w: Iterable[Letter]) -> Matrix:
    M = ID3
    for letter in w:
        M = mat_mul(M, SL3_IMAGE[letter])
    return M


def sl3_check(w: Word) -> bool:
    return to_sl3(eval_word(w)) == sl3_direct(w)
