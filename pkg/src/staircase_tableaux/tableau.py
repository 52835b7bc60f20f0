"""Staircase-shaped tableaux with alpha/beta fillings.

The staircase of size n is the Young diagram with row lengths n, n-1, ..., 1.
Boxes are addressed (row, col), 1-indexed from the northwest corner, and box
(i, j) exists iff i + j <= n + 1.  Diagonal k collects the boxes with
i + j = n - k + 2: the first diagonal is the long southeast boundary and
diagonal n is the single corner box (1, 1).

A filling assigns Alpha or Beta to some boxes (absence means empty) subject to
three rules: every first-diagonal box is filled, every box north of an Alpha
in its column is empty, and every box west of a Beta in its row is empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping


class Symbol(Enum):
    ALPHA = "a"
    BETA = "b"
    GAMMA = "g"
    DELTA = "d"

    @property
    def is_core(self) -> bool:
        return self in (Symbol.ALPHA, Symbol.BETA)

    def swapped(self) -> "Symbol":
        """Exchange the alpha-like and beta-like roles."""
        return _SWAP[self]


_SWAP = {
    Symbol.ALPHA: Symbol.BETA,
    Symbol.BETA: Symbol.ALPHA,
    Symbol.GAMMA: Symbol.DELTA,
    Symbol.DELTA: Symbol.GAMMA,
}

_CHAR_TO_SYMBOL = {s.value: s for s in Symbol}

Box = tuple[int, int]


def in_shape(n: int, i: int, j: int) -> bool:
    """Whether box (i, j) exists in the size-n staircase."""
    return 1 <= i and 1 <= j and i + j <= n + 1


def boxes(n: int) -> Iterator[Box]:
    """All boxes of the size-n staircase, row-major."""
    for i in range(1, n + 1):
        for j in range(1, n + 2 - i):
            yield (i, j)


def box_count(n: int) -> int:
    return n * (n + 1) // 2


def diagonal_of(n: int, i: int, j: int) -> int:
    """Diagonal index of box (i, j): first diagonal is the SE boundary."""
    return n + 2 - i - j


def diagonal_boxes(n: int, k: int) -> list[Box]:
    """Boxes of diagonal k, enumerated bottom-left to top-right.

    The l-th entry is (n - k - l + 2, l) for l = 1..n-k+1.
    """
    if not 1 <= k <= n:
        raise ValueError(f"diagonal index {k} out of range for size {n}")
    return [(n - k - l + 2, l) for l in range(1, n - k + 2)]


@dataclass(frozen=True)
class DiagonalAddress:
    """Position l counted along diagonal k, so the box (n - k - j + 2, j)."""

    k: int
    j: int

    def box(self, n: int) -> Box:
        if not 1 <= self.k <= n:
            raise ValueError(f"diagonal index {self.k} out of range for size {n}")
        if not 1 <= self.j <= n - self.k + 1:
            raise ValueError(
                f"position {self.j} out of range on diagonal {self.k} of size {n}"
            )
        return (n - self.k - self.j + 2, self.j)


class Tableau:
    """Immutable sparse filling of the size-n staircase.

    ``cells`` maps (row, col) to a Symbol; boxes not present are empty.  The
    constructor checks shape membership, not the filling rules; use
    :meth:`is_valid` for those.
    """

    __slots__ = ("n", "_cells", "_key")

    def __init__(self, n: int, cells: Mapping[Box, Symbol] | None = None):
        if n < 1:
            raise ValueError("size must be at least 1")
        cells = dict(cells or {})
        for (i, j), sym in cells.items():
            if not in_shape(n, i, j):
                raise ValueError(f"box ({i}, {j}) outside the size-{n} staircase")
            if not isinstance(sym, Symbol):
                raise TypeError(f"cell content must be a Symbol, got {sym!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_cells", cells)
        object.__setattr__(self, "_key", (n, tuple(sorted((b, s.value) for b, s in cells.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("Tableau is immutable")

    @property
    def cells(self) -> Mapping[Box, Symbol]:
        return MappingProxyType(self._cells)

    def get(self, i: int, j: int) -> Symbol | None:
        return self._cells.get((i, j))

    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Tableau) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Tableau(n={self.n}, cells={len(self._cells)})"

    def with_cell(self, i: int, j: int, sym: Symbol | None) -> "Tableau":
        """Copy with box (i, j) set to ``sym`` (None clears it)."""
        cells = dict(self._cells)
        if sym is None:
            cells.pop((i, j), None)
        else:
            cells[(i, j)] = sym
        return Tableau(self.n, cells)

    def has_four_symbol(self) -> bool:
        return any(not s.is_core for s in self._cells.values())

    def _require_core(self, op: str) -> None:
        if self.has_four_symbol():
            raise ValueError(f"{op} accepts only Alpha/Beta fillings")

    def symbol_counts(self) -> tuple[int, int]:
        """(number of Alphas, number of Betas)."""
        self._require_core("symbol_counts")
        na = sum(1 for s in self._cells.values() if s is Symbol.ALPHA)
        return na, len(self._cells) - na

    def is_valid(self) -> bool:
        """Check the three filling rules."""
        self._require_core("is_valid")
        n = self.n
        cells = self._cells
        for j in range(1, n + 1):
            if (n + 1 - j, j) not in cells:
                return False
        for (i, j), sym in cells.items():
            if sym is Symbol.ALPHA:
                # every box north of an Alpha in its column must be empty
                if any((i2, j) in cells for i2 in range(1, i)):
                    return False
            else:
                # every box west of a Beta in its row must be empty
                if any((i, j2) in cells for j2 in range(1, j)):
                    return False
        return True

    def involution(self) -> "Tableau":
        """Transpose across the NW-SE axis and swap symbol roles.

        Maps diagonal address (k, j) to (k, n - k - j + 2) and preserves
        validity; applying it twice is the identity.
        """
        return Tableau(self.n, {(j, i): s.swapped() for (i, j), s in self._cells.items()})

    def subtableau(self, i: int, j: int) -> "Tableau":
        """Delete the first i-1 rows and j-1 columns.

        The result is the size n - i - j + 2 staircase hanging off box (i, j);
        validity is inherited because deleting rows and columns only removes
        constraints and keeps the first diagonal intact.
        """
        if not in_shape(self.n, i, j):
            raise ValueError(f"({i}, {j}) is not a box of the size-{self.n} staircase")
        m = self.n - i - j + 2
        cells = {
            (r - i + 1, c - j + 1): s
            for (r, c), s in self._cells.items()
            if r >= i and c >= j
        }
        return Tableau(m, cells)


def new_empty(n: int) -> Tableau:
    """The size-n staircase with every box empty (not valid until filled)."""
    return Tableau(n)


def symbol_at(t: Tableau, addr: DiagonalAddress) -> Symbol | None:
    """Content at a diagonal address; None means empty."""
    i, j = addr.box(t.n)
    return t.get(i, j)


class FourSymbolTableau:
    """Filling over the four-symbol alphabet, produced by the randomized split.

    Carries no measure or validity semantics of its own; ``to_core`` replaces
    Gamma with Alpha and Delta with Beta, recovering the two-symbol tableau.
    """

    __slots__ = ("n", "_cells")

    def __init__(self, n: int, cells: Mapping[Box, Symbol] | None = None):
        cells = dict(cells or {})
        for (i, j), sym in cells.items():
            if not in_shape(n, i, j):
                raise ValueError(f"box ({i}, {j}) outside the size-{n} staircase")
            if not isinstance(sym, Symbol):
                raise TypeError(f"cell content must be a Symbol, got {sym!r}")
        self.n = n
        self._cells = cells

    @property
    def cells(self) -> Mapping[Box, Symbol]:
        return MappingProxyType(self._cells)

    def symbol_counts(self) -> dict[Symbol, int]:
        out = {s: 0 for s in Symbol}
        for s in self._cells.values():
            out[s] += 1
        return out

    def to_core(self) -> Tableau:
        reduce = {
            Symbol.GAMMA: Symbol.ALPHA,
            Symbol.DELTA: Symbol.BETA,
        }
        return Tableau(self.n, {b: reduce.get(s, s) for b, s in self._cells.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FourSymbolTableau)
            and self.n == other.n
            and self._cells == other._cells
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted((b, s.value) for b, s in self._cells.items()))))


def _coerce_probability(p) -> Fraction:
    q = Fraction(p)
    if not 0 <= q <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return q


def to_four_symbol(t: Tableau, p_gamma, p_delta, rng) -> FourSymbolTableau:
    """Randomly promote Alphas to Gamma (prob p_gamma) and Betas to Delta.

    ``rng`` is a numpy Generator; draws are consumed in sorted box order so a
    fixed seed reproduces the outcome exactly.
    """
    t._require_core("to_four_symbol")
    pg = _coerce_probability(p_gamma)
    pd = _coerce_probability(p_delta)
    cells: dict[Box, Symbol] = {}
    for box in sorted(t.cells):
        sym = t.get(*box)
        u = Fraction(rng.random())
        if sym is Symbol.ALPHA:
            cells[box] = Symbol.GAMMA if u < pg else Symbol.ALPHA
        else:
            cells[box] = Symbol.DELTA if u < pd else Symbol.BETA
    return FourSymbolTableau(t.n, cells)


def _grid_lines(n: int, cells: Mapping[Box, Symbol]) -> list[str]:
    lines = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 2 - i):
            sym = cells.get((i, j))
            row.append(sym.value if sym is not None else ".")
        lines.append("".join(row))
    return lines


def format_grid(t: Tableau | FourSymbolTableau) -> str:
    """Text grid: one line per row, top row first, trailing newline.

    Characters: 'a', 'b', 'g', 'd' for symbols and '.' for an empty box; line
    i has exactly n - i + 1 characters.
    """
    return "\n".join(_grid_lines(t.n, t.cells)) + "\n"


def _parse_grid_cells(text: str) -> tuple[int, dict[Box, Symbol]]:
    if not text.endswith("\n"):
        raise ValueError("grid must end with a newline")
    lines = text[:-1].split("\n")
    n = len(lines)
    if n < 1 or lines == [""]:
        raise ValueError("empty grid")
    cells: dict[Box, Symbol] = {}
    for i, line in enumerate(lines, start=1):
        if len(line) != n - i + 1:
            raise ValueError(
                f"row {i} has {len(line)} characters, expected {n - i + 1}"
            )
        for j, ch in enumerate(line, start=1):
            if ch == ".":
                continue
            sym = _CHAR_TO_SYMBOL.get(ch)
            if sym is None:
                raise ValueError(f"unknown cell character {ch!r} at row {i}")
            cells[(i, j)] = sym
    return n, cells


def parse_grid(text: str) -> Tableau:
    """Parse the text grid format; rejects four-symbol content."""
    n, cells = _parse_grid_cells(text)
    for box, sym in cells.items():
        if not sym.is_core:
            raise ValueError(f"four-symbol content {sym.value!r} at {box}; use parse_four_grid")
    return Tableau(n, cells)


def parse_four_grid(text: str) -> FourSymbolTableau:
    n, cells = _parse_grid_cells(text)
    return FourSymbolTableau(n, cells)


def format_json(t: Tableau) -> str:
    """JSON form: {"n": n, "cells": [[i, j, "a"|"b"], ...]} sorted."""
    payload = {
        "n": t.n,
        "cells": [[i, j, s.value] for (i, j), s in sorted(t.cells.items())],
    }
    return json.dumps(payload, separators=(", ", ": "))


def parse_json(text: str) -> Tableau:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed tableau JSON: {exc}") from exc
    if not isinstance(payload, dict) or "n" not in payload or "cells" not in payload:
        raise ValueError("tableau JSON needs 'n' and 'cells'")
    n = payload["n"]
    if not isinstance(n, int):
        raise ValueError("'n' must be an integer")
    cells: dict[Box, Symbol] = {}
    for entry in payload["cells"]:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise ValueError(f"bad cell entry {entry!r}")
        i, j, ch = entry
        sym = _CHAR_TO_SYMBOL.get(ch)
        if sym is None or not sym.is_core:
            raise ValueError(f"bad cell symbol {ch!r}")
        if (i, j) in cells:
            raise ValueError(f"duplicate cell ({i}, {j})")
        cells[(i, j)] = sym
    return Tableau(n, cells)
