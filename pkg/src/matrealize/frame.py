"""Normal frames of matrices and diagonal scaling onto them.

A matrix is turned into a board whose squares are black (zero entry) or white
(nonzero entry). Every column gets its first white square from the top painted
blue; every row then gets its first square that is still white, from the left,
painted red; finally blue and red squares become green. The green positions
are the normal frame.

Rows and columns are indexed from 0 throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import AllZero, ZeroLinePresent


class Cell(str, Enum):
    BLACK = "black"
    WHITE = "white"
    BLUE = "blue"
    RED = "red"
    GREEN = "green"


@dataclass(frozen=True)
class PatternBoard:
    rows: int
    cols: int
    cells: tuple  # tuple of row tuples of Cell

    def __getitem__(self, pos):
        i, j = pos
        return self.cells[i][j]

    def __str__(self):
        glyph = {Cell.BLACK: "#", Cell.WHITE: ".", Cell.BLUE: "b", Cell.RED: "r", Cell.GREEN: "G"}
        return "\n".join("".join(glyph[c] for c in row) for row in self.cells)


@dataclass(frozen=True)
class NormalFrame:
    positions: frozenset
    column_positions: frozenset  # green squares that were blue
    row_positions: frozenset     # green squares that were red

    def __contains__(self, pos):
        return pos in self.positions

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(sorted(self.positions))


def to_mask(Q) -> tuple:
    """Zero/nonzero mask of a matrix given as nested sequences."""
    return tuple(tuple(bool(x) for x in row) for row in Q)


def _shape(mask):
    n = len(mask)
    r = len(mask[0]) if n else 0
    return n, r


def board_stages(Q) -> tuple:
    """Boards ``(S0, S1, S2, S)`` of a matrix or mask."""
    mask = to_mask(Q)
    n, r = _shape(mask)
    s0 = [[Cell.WHITE if mask[i][j] else Cell.BLACK for j in range(r)] for i in range(n)]
    s1 = [row[:] for row in s0]
    for j in range(r):
        for i in range(n):
            if s1[i][j] is Cell.WHITE:
                s1[i][j] = Cell.BLUE
                break
    s2 = [row[:] for row in s1]
    for i in range(n):
        for j in range(r):
            if s2[i][j] is Cell.WHITE:
                s2[i][j] = Cell.RED
                break
    s = [[Cell.GREEN if c in (Cell.BLUE, Cell.RED) else c for c in row] for row in s2]
    freeze = lambda b: PatternBoard(n, r, tuple(tuple(row) for row in b))
    return freeze(s0), freeze(s1), freeze(s2), freeze(s)


def compute_frame(Q) -> tuple:
    """Final board and normal frame of ``Q`` (a matrix or a boolean mask)."""
    _, _, s2, s = board_stages(Q)
    blue, red = set(), set()
    for i, row in enumerate(s2.cells):
        for j, c in enumerate(row):
            if c is Cell.BLUE:
                blue.add((i, j))
            elif c is Cell.RED:
                red.add((i, j))
    return s, NormalFrame(frozenset(blue | red), frozenset(blue), frozenset(red))


def _delete(mask, line):
    kind, k = line
    if kind == "row":
        return tuple(row for i, row in enumerate(mask) if i != k)
    return tuple(tuple(x for j, x in enumerate(row) if j != k) for row in mask)


def deletable_line(Q) -> tuple:
    """A line of the final board with exactly one green square whose removal
    commutes with the board construction.

    Returns ``("row", i)`` or ``("col", j)``. The mask must have a nonzero
    entry and no all-zero row or column.

    Let ``nu`` be the last row holding a blue square. If a row follows it,
    that row has no blue, so its only green is its red square. Otherwise the
    first column whose blue sits in the last row is returned: everything above
    that blue square is black.
    """
    mask = to_mask(Q)
    n, r = _shape(mask)
    if not any(any(row) for row in mask):
        raise AllZero("matrix has no nonzero entry")
    if any(not any(row) for row in mask) or any(not any(mask[i][j] for i in range(n)) for j in range(r)):
        raise ZeroLinePresent("strip all-zero rows and columns first")
    _, frame = compute_frame(mask)
    blue_row = {j: i for i, j in frame.column_positions}
    nu = max(blue_row.values())
    if nu < n - 1:
        return ("row", nu + 1)
    return ("col", min(j for j, i in blue_row.items() if i == nu))


def check_deletable(Q, line) -> bool:
    """Whether ``line`` satisfies both conditions of :func:`deletable_line`."""
    mask = to_mask(Q)
    s, _ = compute_frame(mask)
    kind, k = line
    if kind == "row":
        greens = sum(c is Cell.GREEN for c in s.cells[k])
    else:
        greens = sum(row[k] is Cell.GREEN for row in s.cells)
    if greens != 1:
        return False
    after, _ = compute_frame(_delete(mask, line))
    return after.cells == _delete(s.cells, line)


def _zero_lines(mask, rows, cols):
    zr = [i for i in rows if not any(mask[i][j] for j in cols)]
    zc = [j for j in cols if not any(mask[i][j] for i in rows)]
    return zr, zc


def scale_to_frame(Q: Sequence[Sequence]) -> tuple:
    """Diagonals ``(d1, d2)`` with every frame entry of ``diag(d1) Q diag(d2)``
    equal to 1.

    Built by peeling deletable lines: once the smaller matrix is scaled, the
    removed line's factor is chosen to turn its single green entry into 1.
    Entries are returned as :class:`fractions.Fraction`.
    """
    Q = [[Fraction(x) for x in row] for row in Q]
    n, r = _shape(Q)
    d1 = [Fraction(1)] * n
    d2 = [Fraction(1)] * r
    mask = to_mask(Q)
    rows, cols = list(range(n)), list(range(r))
    peeled = []
    while True:
        zr, zc = _zero_lines(mask, rows, cols)
        rows = [i for i in rows if i not in zr]
        cols = [j for j in cols if j not in zc]
        if not rows or not cols:
            break
        sub = [[mask[i][j] for j in cols] for i in rows]
        kind, k = deletable_line(sub)
        _, frame = compute_frame(sub)
        if kind == "row":
            (jj,) = [j for i, j in frame.positions if i == k]
            peeled.append(("row", rows[k], cols[jj]))
            rows = rows[:k] + rows[k + 1:]
        else:
            (ii,) = [i for i, j in frame.positions if j == k]
            peeled.append(("col", cols[k], rows[ii]))
            cols = cols[:k] + cols[k + 1:]
    for kind, a, b in reversed(peeled):
        if kind == "row":
            d1[a] = 1 / (d2[b] * Q[a][b])
        else:
            d2[a] = 1 / (d1[b] * Q[b][a])
    return d1, d2


def apply_scaling(d1, Q, d2) -> list:
    return [[d1[i] * Fraction(x) * d2[j] for j, x in enumerate(row)] for i, row in enumerate(Q)]


def parse_rational(x) -> Fraction:
    """Integers, or strings such as ``"3"`` and ``"-2/5"``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def parse_matrix(data) -> list:
    """Rational matrix from a JSON-style array of arrays."""
    rows = [[parse_rational(x) for x in row] for row in data]
    if rows and len({len(row) for row in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def format_rational(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
