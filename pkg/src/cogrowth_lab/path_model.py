"""Lattice paths of words, algebraic area, and winding-number grids.

An x-letter steps right (x^-1 left); y steps up. In vH words the letter t
produces no step but swaps the reading of x between horizontal and
vertical, so x^n0 t x^n1 t x^n2 reads as x^n0 y^n1 x^n2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .heis_core import Letter

RIGHT, LEFT, UP, DOWN = (1, 0), (-1, 0), (0, 1), (0, -1)


@dataclass(frozen=True)
class LatticePath:
    steps: tuple[tuple[int, int], ...]

    def endpoint(self) -> tuple[int, int]:
        return (sum(dx for dx, _ in self.steps), sum(dy for _, dy in self.steps))

    def vertices(self) -> list[tuple[int, int]]:
        pts = [(0, 0)]
        for dx, dy in self.steps:
            x, y = pts[-1]
            pts.append((x + dx, y + dy))
        return pts

    def closed(self) -> LatticePath:
        """Append the closing segment x^-a y^-b back to the origin."""
        a, b = self.endpoint()
        tail = [LEFT if a > 0 else RIGHT] * abs(a) + [DOWN if b > 0 else UP] * abs(b)
        return LatticePath(self.steps + tuple(tail))


def word_to_path(w: Iterable[Letter]) -> LatticePath:
    steps = []
    swapped = False
    for letter in w:
        if letter is Letter.T:
            swapped = not swapped
        elif letter is Letter.X:
            steps.append(UP if swapped else RIGHT)
        elif letter is Letter.XINV:
            steps.append(DOWN if swapped else LEFT)
        elif letter is Letter.Y:
            steps.append(UP)
        elif letter is Letter.YINV:
            steps.append(DOWN)
    return LatticePath(tuple(steps))


def algebraic_area(p: LatticePath) -> int:
    """Sum over vertical steps of (abscissa) * (+1 up / -1 down) on the closed curve.

    The closing segment x^-a y^-b runs its vertical part on x = 0, so it
    contributes nothing; it is appended anyway to keep the definition literal.
    """
    x = area = 0
    for dx, dy in p.closed().steps:
        x += dx
        area += x * dy
    return area


@dataclass
class WindingGrid:
    """Winding numbers of unit squares; cell [i, j] has lower-left corner (x0 + i, y0 + j)."""

    x0: int
    y0: int
    values: np.ndarray

    def total(self) -> int:
        return int(self.values.sum())

    def at(self, x: int, y: int) -> int:
        """Winding number of the unit square with lower-left corner (x, y)."""
        i, j = x - self.x0, y - self.y0
        if 0 <= i < self.values.shape[0] and 0 <= j < self.values.shape[1]:
            return int(self.values[i, j])
        return 0

    def to_tsv(self) -> str:
        # top row first so the dump reads like the picture
        rows = [f"# x0={self.x0} y0={self.y0}"]
        for j in range(self.values.shape[1] - 1, -1, -1):
            rows.append("\t".join(str(int(v)) for v in self.values[:, j]))
        return "\n".join(rows) + "\n"


def winding_grid(p: LatticePath) -> WindingGrid:
    """Winding numbers by casting a ray from each square's centre to the right.

    An upward edge crossing the ray counts +1, a downward one -1. The box is
    padded by one cell on each side so its border cells read 0.
    """
    verts = p.closed().vertices()
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    x0, y0 = min(xs) - 1, min(ys) - 1
    W, H = max(xs) - x0 + 1, max(ys) - y0 + 1
    grid = np.zeros((W, H), dtype=np.int64)
    for (xa, ya), (xb, yb) in zip(verts, verts[1:]):
        if xa != xb:
            continue
        # vertical edge at abscissa xa spanning row min(ya, yb)
        sign = yb - ya
        row = min(ya, yb) - y0
        grid[: xa - x0, row] += sign
    return WindingGrid(x0, y0, grid)
