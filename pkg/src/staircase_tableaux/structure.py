"""Corner structure of tableaux conditioned on diagonal cells.

Conditioning on symbols at chosen cells of diagonal k confines the
combinatorics to a corner subtableau: the cells force symbols on the first
diagonal, a staircase region D spans the space between the conditioned
cells and the first diagonal, and every extra symbol that the conditioning
can interact with is tied into that region through shared rows and columns.

Two routes classify the tied-in symbols.  The closure route (authoritative)
connects candidate symbols that share a row or a column and keeps the
components that touch D or a conditioned cell's row or column.  The walk
route follows the local connection rules step by step; the two are computed
side by side and any disagreement is reported, never silently dropped.

The number of ways h extra symbols can be tied in drives exact
decompositions of conditioned probabilities; the configuration counts are
extracted from those decompositions by an exact overdetermined linear
solve, and a literal pattern count is kept next to it for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import enumeration as en
from .measure import Params, falling_factorial, joint_probability
from .tableau import Box, DiagonalAddress, Symbol, Tableau, diagonal_of


def _checked_positions(js: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(j) for j in js)
    if not out:
        raise ValueError("need at least one position")
    if out[0] < 1:
        raise ValueError("positions start at 1")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError("positions must be strictly increasing")
    return out


@dataclass(frozen=True)
class MStat:
    """Split statistic of a conditioned position tuple on one diagonal."""

    m: int
    k: int
    j_list: tuple[int, ...]


def compute_m(j_list: Sequence[int], k: int) -> MStat:
    """First 1-based index whose position sits at least k before its successor.

    The index equals the tuple length when no consecutive gap reaches k, so
    the split point is always defined.
    """
    js = _checked_positions(j_list)
    m = len(js)
    for l in range(len(js) - 1):
        if js[l] <= js[l + 1] - k:
            m = l + 1
            break
    return MStat(m=m, k=k, j_list=js)


def hat_k(k: int, m_stat: MStat) -> int:
    """Size of the corner subtableau that contains the first split of cells."""
    js = m_stat.j_list
    return k + js[m_stat.m - 1] - js[0]


@dataclass(frozen=True)
class CornerFrame:
    """Placement of the conditioned corner inside its host tableau.

    Corner coordinates map to host coordinates by adding the offsets.  The
    corner has size `hat_size` and carries the first m conditioned cells on
    its diagonal k.
    """

    n: int
    k: int
    js: tuple[int, ...]
    m: int
    hat_size: int
    row_offset: int
    col_offset: int

    @property
    def corner_positions(self) -> tuple[int, ...]:
        return tuple(j - self.js[0] + 1 for j in self.js[: self.m])

    @property
    def bound(self) -> int:
        return self.hat_size - self.m - 1

    def to_host(self, box: Box) -> Box:
        return (box[0] + self.row_offset, box[1] + self.col_offset)


def corner_frame(n: int, k: int, js: Sequence[int]) -> CornerFrame:
    js = _checked_positions(js)
    if not 2 <= k <= n:
        raise ValueError(f"diagonal index {k} must be in 2..{n}")
    if js[-1] > n - k + 1:
        raise ValueError(f"position {js[-1]} out of range on diagonal {k}")
    stat = compute_m(js, k)
    m = stat.m
    size = hat_k(k, stat)
    col_offset = js[0] - 1
    row_offset = (n - col_offset) - size
    return CornerFrame(
        n=n,
        k=k,
        js=js,
        m=m,
        hat_size=size,
        row_offset=row_offset,
        col_offset=col_offset,
    )


def corner_tableau(t: Tableau, k: int, js: Sequence[int]) -> tuple[CornerFrame, Tableau]:
    """The corner frame together with the corner contents of a tableau.

    Every conditioned cell must hold a symbol in t; the corner is the
    subtableau obtained by deleting the rows above it and the columns west
    of the first conditioned position.
    """
    frame = corner_frame(t.n, k, js)
    for j in js:
        box = DiagonalAddress(k, j).box(t.n)
        if t.get(*box) is None:
            raise ValueError(f"conditioned cell {box} is empty")
    corner = t.subtableau(frame.row_offset + 1, frame.js[0])
    return frame, corner


def region_boxes(frame: CornerFrame) -> frozenset[Box]:
    """Boxes of the region between the conditioned cells and the first diagonal.

    In corner coordinates.  Column by column, the region runs from the
    horizontal boundary segment set by the last conditioned position at or
    west of the column down to the first diagonal.
    """
    return _d_region(frame.hat_size, frame.k, frame.corner_positions)


@lru_cache(maxsize=4096)
def _d_region(size: int, k: int, positions: tuple[int, ...]) -> frozenset[Box]:
    out = set()
    for c in range(1, size + 1):
        anchor = max(j for j in positions if j <= c)
        top = size - k - anchor + 2
        for r in range(top, size + 2 - c):
            out.add((r, c))
    return frozenset(out)


def _candidate_boxes(corner: Tableau, frame: CornerFrame) -> list[Box]:
    size, k = frame.hat_size, frame.k
    return [
        box
        for box in corner.cells
        if diagonal_of(size, *box) not in (1, k)
    ]


def _conditioned_boxes(frame: CornerFrame) -> list[Box]:
    size, k = frame.hat_size, frame.k
    return [DiagonalAddress(k, j).box(size) for j in frame.corner_positions]


def connected_symbols(corner: Tableau, frame: CornerFrame) -> frozenset[Box]:
    """Boxes of the symbols tied into the region, by row/column closure.

    Candidates are the symbols off the first diagonal and off diagonal k.
    Candidates sharing a row or a column belong to one component; a
    component is tied in when a member lies in the region or shares a row
    or column with a conditioned cell.
    """
    region = region_boxes(frame)
    xs = _conditioned_boxes(frame)
    x_rows = {b[0] for b in xs}
    x_cols = {b[1] for b in xs}
    cand = _candidate_boxes(corner, frame)
    by_row: dict[int, list[Box]] = {}
    by_col: dict[int, list[Box]] = {}
    for box in cand:
        by_row.setdefault(box[0], []).append(box)
        by_col.setdefault(box[1], []).append(box)
    seen: set[Box] = set()
    out: set[Box] = set()
    for start in cand:
        if start in seen:
            continue
        component = [start]
        seen.add(start)
        i = 0
        while i < len(component):
            r, c = component[i]
            i += 1
            for other in itertools.chain(by_row[r], by_col[c]):
                if other not in seen:
                    seen.add(other)
                    component.append(other)
        anchored = any(
            box in region or box[0] in x_rows or box[1] in x_cols
            for box in component
        )
        if anchored:
            out.update(component)
    return frozenset(out)


def _corner_path(corner: Tableau, frame: CornerFrame, start: Box) -> tuple[Box, ...]:
    """Deterministic connection walk from one candidate symbol.

    An Alpha steps to the nearest Beta strictly below it in its column, a
    Beta steps to the nearest Alpha strictly east in its row; either step
    refuses first-diagonal targets.  A symbol sharing a column or a row
    with a conditioned cell hops onto it.  The walk stops on entering the
    region or when no rule applies; each symbol step strictly lowers the
    diagonal index, so it terminates.
    """
    size, k = frame.hat_size, frame.k
    region = region_boxes(frame)
    xs = _conditioned_boxes(frame)
    x_by_col = {b[1]: b for b in xs}
    x_by_row = {b[0]: b for b in xs}
    path = [start]
    cur = start
    while True:
        if cur in region:
            return tuple(path)
        sym = corner.get(*cur)
        r, c = cur
        target: Box | None = None
        if sym is Symbol.ALPHA:
            for r2 in range(r + 1, size + 1 - c):
                if corner.get(r2, c) is Symbol.BETA:
                    target = (r2, c)
                    break
        elif sym is Symbol.BETA:
            for c2 in range(c + 1, size + 1 - r):
                if corner.get(r, c2) is Symbol.ALPHA:
                    target = (r, c2)
                    break
        if target is not None:
            path.append(target)
            cur = target
            continue
        if c in x_by_col:
            path.append(x_by_col[c])
        elif r in x_by_row:
            path.append(x_by_row[r])
        return tuple(path)


def path_connected_symbols(corner: Tableau, frame: CornerFrame) -> frozenset[Box]:
    """The walk-route version of connected_symbols."""
    region = region_boxes(frame)
    out = set()
    for box in _candidate_boxes(corner, frame):
        path = _corner_path(corner, frame, box)
        if path[-1] in region:
            out.add(box)
    return frozenset(out)


def _positions_from_events(t: Tableau, k: int, events) -> tuple[int, ...]:
    """Conditioned columns on diagonal k, validated against the tableau.

    Accepts bare column indices or (k, j, content) triples; a definite
    content must match what the tableau holds there.
    """
    js: set[int] = set()
    for ev in events:
        if isinstance(ev, int):
            js.add(ev)
            continue
        kk, j, content = ev
        code = content if isinstance(content, int) else en._CODE_OF[content]
        if kk != k:
            raise ValueError(f"event on diagonal {kk}, expected {k}")
        if code == en.EMPTY:
            raise ValueError("conditioned cells must hold a symbol")
        box = DiagonalAddress(k, j).box(t.n)
        have = t.get(*box)
        if have is None:
            raise ValueError(f"cell {box} is empty, inconsistent with the events")
        if code != en.ANY and en._CODE_OF[have] != code:
            raise ValueError(f"cell {box} holds {have}, inconsistent with the events")
        js.add(j)
    if not js:
        raise ValueError("need at least one conditioned cell")
    return tuple(sorted(js))


@dataclass(frozen=True)
class DRegion:
    """The corner region: its broken-line boundary trace and its box set."""

    boundary: tuple[Box, ...]
    interior: frozenset[Box]


def _region_boundary(frame: CornerFrame) -> tuple[Box, ...]:
    # From the forced Beta at the bottom of the first column, up through the
    # conditioned cells with vertical and horizontal segments alternating,
    # to the forced Alpha at the east end of the top row.
    size, k = frame.hat_size, frame.k
    cs = frame.corner_positions
    tops = [size - k - c + 2 for c in cs]
    out: list[Box] = []
    for r in range(size, tops[0] - 1, -1):
        out.append((r, 1))
    for l in range(len(cs) - 1):
        for c in range(cs[l] + 1, cs[l + 1] + 1):
            out.append((tops[l], c))
        for r in range(tops[l] - 1, tops[l + 1] - 1, -1):
            out.append((r, cs[l + 1]))
    for c in range(cs[-1] + 1, size + 1):
        out.append((tops[-1], c))
    return tuple(out)


def d_region(t: Tableau, k: int, events) -> DRegion:
    """The region of a conditioned tableau, in host coordinates."""
    js = _positions_from_events(t, k, events)
    frame, _ = corner_tableau(t, k, js)
    return DRegion(
        boundary=tuple(frame.to_host(b) for b in _region_boundary(frame)),
        interior=frozenset(frame.to_host(b) for b in region_boxes(frame)),
    )


def d_connected(t: Tableau, k: int, events) -> frozenset[Box]:
    """Symbols tied into the region, in host coordinates (closure route)."""
    js = _positions_from_events(t, k, events)
    frame, corner = corner_tableau(t, k, js)
    return frozenset(frame.to_host(b) for b in connected_symbols(corner, frame))


def ab_path(t: Tableau, box: Box, k: int, events) -> tuple[Box, ...]:
    """The connection walk from one symbol, in host coordinates.

    The box must hold a symbol and sit off the corner's first and k-th
    diagonals; the walk runs inside the corner frame of the conditioned
    cells and the returned trace includes the starting box.
    """
    js = _positions_from_events(t, k, events)
    frame, corner = corner_tableau(t, k, js)
    start = (box[0] - frame.row_offset, box[1] - frame.col_offset)
    size = frame.hat_size
    if not (start[0] >= 1 and start[1] >= 1 and start[0] + start[1] <= size + 1):
        raise ValueError(f"box {box} lies outside the corner")
    if corner.get(*start) is None:
        raise ValueError(f"box {box} is empty")
    if diagonal_of(size, *start) in (1, k):
        raise ValueError(f"box {box} sits on an excluded diagonal")
    return tuple(frame.to_host(b) for b in _corner_path(corner, frame, start))


@dataclass(frozen=True)
class StructureReport:
    """Everything the corner analysis of one conditioned tableau produces.

    `connected` is the authoritative closure-route set in corner
    coordinates; `pairing` maps each connected symbol to the forced
    first-diagonal symbol of opposite type in its line.
    """

    frame: CornerFrame
    region: frozenset[Box]
    connected: frozenset[Box]
    connected_host: frozenset[Box]
    path_connected: frozenset[Box]
    routes_agree: bool
    closure_closed: bool
    within_bound: bool
    pairing: tuple[tuple[Box, Box], ...]
    pairing_ok: bool

    @property
    def ok(self) -> bool:
        return self.closure_closed and self.within_bound and self.pairing_ok


def verify_lemma3(t: Tableau, k: int, events) -> StructureReport:
    """Analyze one conditioned tableau and check the structural guarantees.

    Checks: the connected set is closed under shared rows and columns among
    candidates; its size stays within hat_size - m - 1; and each connected
    symbol pairs injectively with an opposite symbol on the first diagonal
    (column partner for an Alpha, row partner for a Beta).  Events may be
    bare columns or (k, j, content) triples.
    """
    js = _positions_from_events(t, k, events)
    frame, corner = corner_tableau(t, k, js)
    size = frame.hat_size
    region = region_boxes(frame)
    connected = connected_symbols(corner, frame)
    path_set = path_connected_symbols(corner, frame)

    cand = set(_candidate_boxes(corner, frame))
    closed = True
    rows = {b[0] for b in connected}
    cols = {b[1] for b in connected}
    for box in cand - connected:
        if box[0] in rows or box[1] in cols:
            closed = False
            break

    pairing = []
    partners: set[Box] = set()
    pairing_ok = True
    for box in sorted(connected):
        r, c = box
        sym = corner.get(*box)
        if sym is Symbol.ALPHA:
            partner = (size + 1 - c, c)
            want = Symbol.BETA
        else:
            partner = (r, size + 1 - r)
            want = Symbol.ALPHA
        if corner.get(*partner) is not want or partner in partners:
            pairing_ok = False
        partners.add(partner)
        pairing.append((box, partner))

    return StructureReport(
        frame=frame,
        region=region,
        connected=connected,
        connected_host=frozenset(frame.to_host(b) for b in connected),
        path_connected=path_set,
        routes_agree=connected == path_set,
        closure_closed=closed,
        within_bound=len(connected) <= frame.bound,
        pairing=tuple(pairing),
        pairing_ok=pairing_ok,
    )


def structure_sweep(
    n: int, k: int, max_r: int = 2
) -> tuple[int, int, list[tuple[Tableau, tuple[int, ...]]]]:
    """Run the corner analysis over every conditioned pair at one size.

    Returns (cases checked, walk/closure disagreements, failures), where
    failures collects the (tableau, positions) pairs whose report violates
    a structural guarantee.  Every valid tableau is combined with every
    position tuple of length at most max_r whose cells it fills.
    """
    checked = 0
    disagreements = 0
    failures: list[tuple[Tableau, tuple[int, ...]]] = []
    width = n - k + 1
    for t in en.enumerate_all(n):
        filled = [
            j
            for j in range(1, width + 1)
            if t.get(*DiagonalAddress(k, j).box(n)) is not None
        ]
        for r in range(1, max_r + 1):
            for js in itertools.combinations(filled, r):
                report = verify_lemma3(t, k, js)
                checked += 1
                if not report.routes_agree:
                    disagreements += 1
                if not report.ok:
                    failures.append((t, js))
    return checked, disagreements, failures


def direct_configuration_count(k: int, h: int) -> int:
    """Literal pattern count of h extra symbols tied to one conditioned cell.

    Counts placements along the cell's own column (a Beta strictly between
    it and the first diagonal) and its own row (an Alpha strictly between
    it and the first diagonal), excluding pairs whose forced first-diagonal
    partners would claim the same box with opposite symbols.
    """
    if k < 2:
        raise ValueError("diagonal index must be at least 2")
    if h < 0:
        return 0
    row_slots = tuple(range(2, k))
    col_slots = tuple(range(2, k))
    count = 0
    for rs in itertools.chain.from_iterable(
        itertools.combinations(row_slots, p) for p in range(min(h, len(row_slots)) + 1)
    ):
        q = h - len(rs)
        if q > len(col_slots):
            continue
        for cs in itertools.combinations(col_slots, q):
            if any(k + 1 - r == c for r in rs for c in cs):
                continue
            count += 1
    return count


@dataclass(frozen=True)
class CTable:
    """Configuration counts for one diagonal index, with validity flags.

    `values[h]` multiplies the weight of the case with h tied-in symbols in
    the decomposition of a conditioned probability.  `consistent` records
    that every equation of the overdetermined system was satisfied exactly,
    which is what makes the counts independent of the tableau size.
    """

    k: int
    values: tuple[Fraction, ...]
    consistent: bool
    integral: bool
    nonnegative: bool
    leading_one: bool
    equations: int

    @property
    def ok(self) -> bool:
        return self.consistent and self.integral and self.nonnegative and self.leading_one

    def as_ints(self) -> tuple[int, ...]:
        if not self.integral:
            raise ValueError("table is not integral")
        return tuple(int(v) for v in self.values)


def _solve_overdetermined(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[tuple[Fraction, ...], bool]:
    """Exact solve of an overdetermined linear system by elimination.

    Returns the solution of a maximal independent subsystem and whether
    every remaining equation is satisfied exactly by it.
    """
    unknowns = len(rows[0])
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivot_rows: list[list[Fraction]] = []
    for col in range(unknowns):
        pivot = None
        for r in aug:
            if r[col] != 0 and all(r[c] == 0 for c in range(col)):
                pivot = r
                break
        if pivot is None:
            raise ValueError("system does not determine all unknowns")
        pivot_rows.append(pivot)
        for r in aug:
            if r is pivot or r[col] == 0:
                continue
            factor = r[col] / pivot[col]
            for c in range(col, unknowns + 1):
                r[c] -= factor * pivot[c]
    solution = [Fraction(0)] * unknowns
    for col in reversed(range(unknowns)):
        r = pivot_rows[col]
        acc = r[unknowns]
        for c in range(col + 1, unknowns):
            acc -= r[c] * solution[c]
        solution[col] = acc / r[col]
    consistent = True
    for r in aug:
        if any(r is pr for pr in pivot_rows):
            continue
        if any(r[c] != 0 for c in range(unknowns)) or r[unknowns] != 0:
            consistent = False
            break
    return tuple(solution), consistent


def extract_c_table(
    k: int,
    p_grid: Sequence[Params] | None = None,
    n_range: Sequence[int] | None = None,
) -> CTable:
    """Extract the configuration counts from exact conditioned probabilities.

    Builds one equation per (size, parameter) pair from the single-cell
    decomposition: the probability of an Alpha at position 1 of diagonal k
    equals sum_h values[h] * b / (n+a+b-1)_{h+2}.  The system is solved
    exactly and the leftover equations double as the size-independence
    check.  Parameter points with b = 0 contribute nothing and are skipped.
    """
    if k < 2:
        raise ValueError("diagonal index must be at least 2")
    if n_range is None:
        n_range = tuple(range(k + 2, min(k + 2 + (k - 1) + 1, 10)))
    n_values = sorted(set(int(n) for n in n_range))
    if len(n_values) < k or any(n < k + 2 for n in n_values):
        raise ValueError(f"need at least {k} distinct sizes, all at least {k + 2}")
    if p_grid is None:
        p_grid = (Params(1, 1), Params(Fraction(1, 2), 3))
    grid = [p for p in p_grid if p.b != 0]
    if not grid:
        raise ValueError("need at least one parameter point with b > 0")
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for n in n_values:
        for p in grid:
            coeff = [
                p.b / falling_factorial(n + p.a + p.b - 1, h + 2)
                for h in range(k - 1)
            ]
            rows.append(coeff)
            rhs.append(joint_probability(n, p, [(k, 1, Symbol.ALPHA)]))
    values, consistent = _solve_overdetermined(rows, rhs)
    return CTable(
        k=k,
        values=values,
        consistent=consistent,
        integral=all(v.denominator == 1 for v in values),
        nonnegative=all(v >= 0 for v in values),
        leading_one=bool(values) and values[0] == 1,
        equations=len(rows),
    )


@dataclass(frozen=True)
class CComparison:
    k: int
    solved: CTable
    direct: tuple[int, ...]
    mismatches: tuple[tuple[int, Fraction, int], ...]

    @property
    def agree(self) -> bool:
        return not self.mismatches


def c_table_comparison(k: int, **kwargs) -> CComparison:
    """Solve-route and pattern-count-route tables side by side.

    The two need not agree; mismatches are reported per index so the
    comparison never hides a divergence between the routes.
    """
    solved = extract_c_table(k, **kwargs)
    direct = tuple(direct_configuration_count(k, h) for h in range(k - 1))
    mismatches = tuple(
        (h, solved.values[h], direct[h])
        for h in range(k - 1)
        if solved.values[h] != direct[h]
    )
    return CComparison(k=k, solved=solved, direct=direct, mismatches=mismatches)


@dataclass(frozen=True)
class DecompositionReport:
    n: int
    k: int
    js: tuple[int, ...]
    params: Params
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def _check_split_one(js: tuple[int, ...], k: int) -> None:
    if js[0] != 1:
        raise ValueError("the decomposition is stated for first position 1")
    if compute_m(js, k).m != 1:
        raise ValueError("the decomposition needs the first gap to reach k")


def alpha_decomposition_check(
    n: int, p: Params, k: int, js: Sequence[int], table: CTable | None = None
) -> DecompositionReport:
    """Exact check of the Alpha-led decomposition of a conditioned probability.

    P_n(Alpha at 1, Alphas at the tail) is decomposed over the number h of
    tied-in symbols: each case contributes values[h] * b/(n+a+b-1)_{h+2}
    times the tail probability in a tableau smaller by h+2, with tail
    positions shifted down by h+2.
    """
    js = _checked_positions(js)
    _check_split_one(js, k)
    if n < k + 1:
        raise ValueError(f"need size at least {k + 1}")
    if table is None:
        table = extract_c_table(k)
    lhs = joint_probability(n, p, [(k, j, Symbol.ALPHA) for j in js])
    N = n + p.a + p.b - 1
    rhs = Fraction(0)
    for h in range(k - 1):
        d = h + 2
        tail = [(k, j - d, Symbol.ALPHA) for j in js[1:]]
        sub = joint_probability(n - d, p, tail) if tail else Fraction(1)
        rhs += table.values[h] * p.b / falling_factorial(N, h + 2) * sub
    return DecompositionReport(n=n, k=k, js=js, params=p, lhs=lhs, rhs=rhs)


def beta_decomposition_check(
    n: int, p: Params, k: int, js: Sequence[int], table: CTable | None = None
) -> DecompositionReport:
    """Exact check of the Beta-led decomposition of a conditioned probability.

    The first cell holds a Beta and the tail cells hold a symbol of either
    type.  Case h contributes two terms: the tail law in a tableau smaller
    by h+1 (positions shifted by h+1), minus the tail law in a tableau
    smaller by k with the second parameter raised by k-h-2 (positions
    shifted by k), weighted by (b+k-h-2)/(a+b+n-h-2).
    """
    js = _checked_positions(js)
    _check_split_one(js, k)
    if n < k + 1:
        raise ValueError(f"need size at least {k + 1}")
    if table is None:
        table = extract_c_table(k)
    events = [(k, 1, Symbol.BETA)]
    events += [(k, j, en.ANY_SYMBOL) for j in js[1:]]
    lhs = joint_probability(n, p, events)
    N = n + p.a + p.b - 1
    rhs = Fraction(0)
    for h in range(k - 1):
        tail_one = [(k, j - h - 1, en.ANY_SYMBOL) for j in js[1:]]
        term_one = (
            joint_probability(n - h - 1, p, tail_one) if tail_one else Fraction(1)
        ) / falling_factorial(N, h + 1)
        shifted = p.shifted(0, k - h - 2)
        tail_two = [(k, j - k, en.ANY_SYMBOL) for j in js[1:]]
        sub_two = joint_probability(n - k, shifted, tail_two) if tail_two else Fraction(1)
        term_two = (
            (p.b + k - h - 2)
            * sub_two
            / (falling_factorial(N, h + 1) * (p.a + p.b + n - h - 2))
        )
        rhs += table.values[h] * (term_one - term_two)
    return DecompositionReport(n=n, k=k, js=js, params=p, lhs=lhs, rhs=rhs)
