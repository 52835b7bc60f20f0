"""Exhaustive enumeration of valid staircase tableaux.

Construction is column-by-column from the left, top-to-bottom inside a
column, trying Alpha, then Beta, then Empty at each box.  Under that order
both filling rules prune incrementally and exactly: an Alpha is allowed iff
no symbol sits above it in its column (all already placed), and a Beta is
allowed iff its row holds no symbol yet (everything west is already placed).
Every partial filling that survives the checks is a prefix of at least zero
valid tableaux and no valid tableau is ever skipped or produced twice.

The profile builders below walk the same tree but accumulate statistics at
the leaves instead of materializing Tableau objects; they are the workhorses
behind the exact marginals, count laws and weight sums.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .tableau import Box, DiagonalAddress, Symbol, Tableau

# Content codes used by constraint maps and profiles.  ANY constrains a cell
# to hold a symbol without saying which; it appears in constraints only,
# never in enumerated cells.
ALPHA, BETA, EMPTY, ANY = 0, 1, 2, 3

#: Sentinel accepted by make_event for "some symbol, either one".
ANY_SYMBOL = "x"

_CODE_OF = {Symbol.ALPHA: ALPHA, Symbol.BETA: BETA, None: EMPTY, ANY_SYMBOL: ANY}
_SYMBOL_OF = {ALPHA: Symbol.ALPHA, BETA: Symbol.BETA}

# Enumeration stays practical through n = 10; materialization through n = 8.
MAX_ENUMERATION_SIZE = 10
MAX_MATERIALIZE_SIZE = 8

Event = tuple[int, int, int]  # (k, j, content code)
EventSet = frozenset[Event]


def _check_size(n: int) -> None:
    if n < 1:
        raise ValueError("size must be at least 1")
    if n > MAX_ENUMERATION_SIZE:
        raise ValueError(f"enumeration is limited to n <= {MAX_ENUMERATION_SIZE}")


def make_event(k: int, j: int, content: Symbol | None | str | int) -> Event:
    # Accepts already-encoded codes, so Event triples round-trip unchanged.
    if type(content) is int and ALPHA <= content <= ANY:
        return (k, j, content)
    if content not in _CODE_OF:
        raise ValueError(f"bad event content {content!r}")
    return (k, j, _CODE_OF[content])


def _boxes_column_major(n: int) -> list[Box]:
    out = []
    for col in range(1, n + 1):
        for row in range(1, n + 2 - col):
            out.append((row, col))
    return out


def events_to_required(n: int, events: Iterable[Event]) -> dict[Box, int]:
    """Resolve diagonal events to box constraints, one constraint per cell.

    Two events on the same cell are rejected even when one would refine the
    other.
    """
    required: dict[Box, int] = {}
    for k, j, code in events:
        box = DiagonalAddress(k, j).box(n)
        if code not in (ALPHA, BETA, EMPTY, ANY):
            raise ValueError(f"bad event content code {code}")
        if required.get(box, code) != code:
            raise ValueError(f"contradictory events for box {box}")
        if code == EMPTY and box[0] + box[1] == n + 1:
            raise ValueError(f"first-diagonal box {box} cannot be required empty")
        required[box] = code
    return required


def _iter_fillings(
    n: int, required: dict[Box, int] | None = None
) -> Iterator[tuple[tuple[tuple[Box, int], ...], int, int]]:
    """Yield (cells, n_alpha, n_beta) for every valid filling, in order.

    ``cells`` is a tuple of ((row, col), content code) pairs for the filled
    boxes in column-major construction order.
    """
    boxes = _boxes_column_major(n)
    req = [(required or {}).get(b, -1) for b in boxes]
    total = len(boxes)
    cells: list[tuple[Box, int]] = []
    row_has = [False] * (n + 2)

    def rec(idx: int, blocked_above: bool, na: int, nb: int):
        if idx == total:
            yield tuple(cells), na, nb
            return
        row, col = boxes[idx]
        on_diag = row + col == n + 1
        # blocked state seen by the next box in construction order
        next_new_col = on_diag  # the diagonal box is the last one of its column
        want = req[idx]

        if not blocked_above and want in (-1, ALPHA, ANY):
            prev = row_has[row]
            row_has[row] = True
            cells.append(((row, col), ALPHA))
            yield from rec(idx + 1, False if next_new_col else True, na + 1, nb)
            cells.pop()
            row_has[row] = prev
        if not row_has[row] and want in (-1, BETA, ANY):
            row_has[row] = True
            cells.append(((row, col), BETA))
            yield from rec(idx + 1, False if next_new_col else True, na, nb + 1)
            cells.pop()
            row_has[row] = False
        if not on_diag and want in (-1, EMPTY):
            yield from rec(idx + 1, False if next_new_col else blocked_above, na, nb)

    yield from rec(0, False, 0, 0)


def enumerate_all(n: int) -> Iterator[Tableau]:
    """Stream every valid size-n tableau in the deterministic DFS order."""
    _check_size(n)
    for cells, _, _ in _iter_fillings(n):
        yield Tableau(n, {box: _SYMBOL_OF[code] for box, code in cells})


def enumerate_filtered(n: int, events: Iterable[Event]) -> Iterator[Tableau]:
    """Stream the valid tableaux consistent with the given diagonal events."""
    _check_size(n)
    required = events_to_required(n, events)
    for cells, _, _ in _iter_fillings(n, required):
        yield Tableau(n, {box: _SYMBOL_OF[code] for box, code in cells})


def materialize(n: int) -> list[Tableau]:
    """Fully materialized enumeration; kept for small sizes only."""
    if n > MAX_MATERIALIZE_SIZE:
        raise ValueError(
            f"materialize is limited to n <= {MAX_MATERIALIZE_SIZE}; stream instead"
        )
    return list(enumerate_all(n))


def count_tableaux(n: int, required: dict[Box, int] | None = None) -> int:
    """Count valid fillings without materializing them."""
    _check_size(n)
    boxes = _boxes_column_major(n)
    req = [(required or {}).get(b, -1) for b in boxes]
    total = len(boxes)
    row_has = [False] * (n + 2)

    def rec(idx: int, blocked_above: bool) -> int:
        if idx == total:
            return 1
        row, col = boxes[idx]
        on_diag = row + col == n + 1
        nxt = False if on_diag else True
        want = req[idx]
        acc = 0
        if not blocked_above and want in (-1, ALPHA, ANY):
            prev = row_has[row]
            row_has[row] = True
            acc += rec(idx + 1, nxt)
            row_has[row] = prev
        if not row_has[row] and want in (-1, BETA, ANY):
            row_has[row] = True
            acc += rec(idx + 1, nxt)
            row_has[row] = False
        if not on_diag and want in (-1, EMPTY):
            acc += rec(idx + 1, blocked_above)
        return acc

    return rec(0, False)


def count_symbols(t: Tableau) -> tuple[int, int]:
    """(Alpha count, Beta count) of a two-symbol tableau."""
    return t.symbol_counts()


@lru_cache(maxsize=None)
def weight_profile(n: int, events: EventSet = frozenset()) -> dict[tuple[int, int], int]:
    """Count tableaux by weight exponents (n - #Alpha, n - #Beta).

    Evaluating sum(count * a**da * b**db) over the profile gives the total
    normalized weight of the (filtered) enumeration for any parameters, so a
    single walk serves every parameter point.
    """
    _check_size(n)
    required = events_to_required(n, events)
    boxes = _boxes_column_major(n)
    req = [required.get(b, -1) for b in boxes]
    fast = _fast_weight_profile(n, req)
    if fast is not None:
        return fast
    total = len(boxes)
    row_has = [False] * (n + 2)
    profile: dict[tuple[int, int], int] = {}

    def rec(idx: int, blocked_above: bool, na: int, nb: int) -> None:
        if idx == total:
            key = (n - na, n - nb)
            profile[key] = profile.get(key, 0) + 1
            return
        row, col = boxes[idx]
        on_diag = row + col == n + 1
        nxt = False if on_diag else True
        want = req[idx]
        if not blocked_above and want in (-1, ALPHA, ANY):
            prev = row_has[row]
            row_has[row] = True
            rec(idx + 1, nxt, na + 1, nb)
            row_has[row] = prev
        if not row_has[row] and want in (-1, BETA, ANY):
            row_has[row] = True
            rec(idx + 1, nxt, na, nb + 1)
            row_has[row] = False
        if not on_diag and want in (-1, EMPTY):
            rec(idx + 1, blocked_above, na, nb)

    rec(0, False, 0, 0)
    return profile


def _fast_weight_profile(n: int, req: list[int]):
    """Compiled twin of the weight-profile walk; None below n = 9 or sans numba.

    Same DFS, same pruning, flat exponent histogram instead of a dict; tests
    pin the two routes against each other where both are affordable.
    """
    if n < 9:
        return None
    try:
        from ._kernels import weight_profile_arr
    except ImportError:
        return None

    flat = weight_profile_arr(n, req)
    span = n + 1
    profile: dict[tuple[int, int], int] = {}
    for pos, cnt in enumerate(flat.tolist()):
        if cnt:
            profile[(pos // span, pos % span)] = cnt
    return profile


@lru_cache(maxsize=32)
def diagonal_joint_profile(
    n: int, k: int
) -> dict[tuple[int, int, int, int], int]:
    """Count tableaux by (Alphas on diagonal k, Betas on diagonal k, da, db).

    This is the one walk that must stay fast through n = 10: it backs the
    exact count laws, their joint law, and every convergence diagnostic.
    """
    _check_size(n)
    if not 1 <= k <= n:
        raise ValueError(f"diagonal index {k} out of range for size {n}")
    fast = _fast_diagonal_joint_profile(n, k)
    if fast is not None:
        return fast
    return _diagonal_joint_profile_py(n, k)


def _diagonal_joint_profile_py(n: int, k: int) -> dict[tuple[int, int, int, int], int]:
    boxes = _boxes_column_major(n)
    on_k = [row + col == n - k + 2 for row, col in boxes]
    total = len(boxes)
    row_has = [False] * (n + 2)
    width = n - k + 2
    span = n + 1
    flat = [0] * (width * width * span * span)

    def rec(idx: int, blocked_above: bool, na: int, nb: int, ca: int, cb: int) -> None:
        if idx == total:
            flat[((ca * width + cb) * span + (n - na)) * span + (n - nb)] += 1
            return
        row, col = boxes[idx]
        on_diag = row + col == n + 1
        nxt = False if on_diag else True
        hit = on_k[idx]
        if not blocked_above:
            prev = row_has[row]
            row_has[row] = True
            rec(idx + 1, nxt, na + 1, nb, ca + 1 if hit else ca, cb)
            row_has[row] = prev
        if not row_has[row]:
            row_has[row] = True
            rec(idx + 1, nxt, na, nb + 1, ca, cb + 1 if hit else cb)
            row_has[row] = False
        if not on_diag:
            rec(idx + 1, blocked_above, na, nb, ca, cb)

    rec(0, False, 0, 0, 0, 0)
    profile: dict[tuple[int, int, int, int], int] = {}
    for pos, cnt in enumerate(flat):
        if cnt:
            db = pos % span
            rest = pos // span
            da = rest % span
            rest //= span
            cb = rest % width
            ca = rest // width
            profile[(ca, cb, da, db)] = cnt
    return profile


def _fast_diagonal_joint_profile(n: int, k: int):
    """Same walk compiled with numba for the large sizes; None if unavailable.

    The compiled kernel is an optimization of the identical direct DFS, not a
    different counting method; tests pin it against the Python walk.
    """
    if n < 9:
        return None
    try:
        from ._kernels import diagonal_joint_profile_arr
    except ImportError:
        return None
    import numpy as np

    flat = diagonal_joint_profile_arr(n, k)
    width = n - k + 2
    span = n + 1
    arr = np.asarray(flat).reshape(width, width, span, span)
    profile: dict[tuple[int, int, int, int], int] = {}
    for ca, cb, da, db in zip(*np.nonzero(arr)):
        profile[(int(ca), int(cb), int(da), int(db))] = int(arr[ca, cb, da, db])
    return profile


def box_content_profile(
    n: int,
) -> dict[tuple[Box, int], dict[tuple[int, int], int]]:
    """For every (box, content) pair, the weight-exponent profile of the
    tableaux showing that content there.  One pass over the enumeration."""
    all_boxes = _boxes_column_major(n)
    profile: dict[tuple[Box, int], dict[tuple[int, int], int]] = {
        (b, code): {} for b in all_boxes for code in (ALPHA, BETA, EMPTY)
    }
    for cells, na, nb in _iter_fillings(n):
        key = (n - na, n - nb)
        filled = set()
        for box, code in cells:
            filled.add(box)
            slot = profile[(box, code)]
            slot[key] = slot.get(key, 0) + 1
        for box in all_boxes:
            if box not in filled:
                slot = profile[(box, EMPTY)]
                slot[key] = slot.get(key, 0) + 1
    return profile


def subtableau_profile(
    n: int, i: int, j: int
) -> dict[tuple[tuple, int, int], int]:
    """Pushforward counts: key (subtableau key, da, db) for deletion at (i, j)."""
    profile: dict[tuple[tuple, int, int], int] = {}
    for cells, na, nb in _iter_fillings(n):
        sub = tuple(
            sorted(((r - i + 1, c - j + 1), code) for (r, c), code in cells if r >= i and c >= j)
        )
        key = (sub, n - na, n - nb)
        profile[key] = profile.get(key, 0) + 1
    return profile


def partition_search_space(n: int, width: int) -> list[EventSet]:
    """Split the enumeration into disjoint prefix constraints.

    Expands the construction tree box by box until at least ``width`` live
    prefixes exist; each returned event set fixes the contents of the first
    few boxes, so the filtered enumerations are pairwise disjoint and cover
    enumerate_all(n) exactly.
    """
    if width < 1:
        raise ValueError("width must be positive")
    if width == 1:
        return [frozenset()]
    boxes = _boxes_column_major(n)
    # frontier entries: (assignments, blocked_above, row_has frozenset)
    frontier: list[tuple[tuple[int, ...], bool, frozenset[int]]] = [((), False, frozenset())]
    depth = 0
    while len(frontier) < width and depth < len(boxes):
        row, col = boxes[depth]
        on_diag = row + col == n + 1
        nxt = False if on_diag else True
        grown: list[tuple[tuple[int, ...], bool, frozenset[int]]] = []
        for assigned, blocked, rows_used in frontier:
            if not blocked:
                grown.append((assigned + (ALPHA,), nxt, rows_used | {row}))
            if row not in rows_used:
                grown.append((assigned + (BETA,), nxt, rows_used | {row}))
            if not on_diag:
                grown.append((assigned + (EMPTY,), blocked, rows_used))
        frontier = grown
        depth += 1
    out = []
    for assigned, _, _ in frontier:
        events = []
        for idx, code in enumerate(assigned):
            row, col = boxes[idx]
            k = n + 2 - row - col
            events.append((k, col, code))
        out.append(frozenset(events))
    return out
