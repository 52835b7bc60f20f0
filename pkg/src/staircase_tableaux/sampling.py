"""Random generation of tableaux under the weighted law.

Two routes: an inverse-CDF sampler over the full enumeration for small
sizes, and a reversible single-box Metropolis chain for sizes beyond
enumeration reach.  The chain proposes one box at a time, rejects anything
that breaks validity, and accepts by the exact rational weight ratio, so
detailed balance holds with no floating-point slack in the target.

All randomness flows through numpy Generators built from explicit seeds;
``spawn_rngs`` splits one seed into independent streams for parallel chains.
"""

from __future__ import annotations

import bisect
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np
from scipy import stats as _scipy_stats

from . import diagonal_stats as ds
from . import enumeration as en
from .measure import Params, normalized_partition
from .tableau import Box, Symbol, Tableau, diagonal_boxes

#: Largest size the exact sampler accepts.  Through MAX_MATERIALIZE_SIZE the
#: enumeration is held in memory; at 9 draws are served by a streaming pass.
MAX_EXACT_SIZE = 9

DEFAULT_BURN_IN = 2000
DEFAULT_THIN = 20


def make_rng(seed: int) -> np.random.Generator:
    """One PCG64 stream, fully determined by the 64-bit seed."""
    return np.random.default_rng(np.random.SeedSequence(seed))


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Split a seed into independent streams for parallel chains."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    params: Params
    seed: int
    mode: str = "exact"
    chain_burn_in: int = DEFAULT_BURN_IN
    chain_thin: int = DEFAULT_THIN

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"size must be positive, got {self.n}")
        if self.mode not in ("exact", "chain"):
            raise ValueError(f"mode must be 'exact' or 'chain', got {self.mode!r}")
        if self.mode == "exact" and self.n > MAX_EXACT_SIZE:
            raise ValueError(
                f"exact mode is limited to n <= {MAX_EXACT_SIZE}; use chain mode"
            )
        if self.chain_burn_in < 0 or self.chain_thin < 1:
            raise ValueError("burn-in must be >= 0 and thinning >= 1")


def _weight_exponents(p: Params, n: int, na: int, nb: int) -> Fraction:
    return p.a ** (n - na) * p.b ** (n - nb)


class ExactSampler:
    """Inverse-CDF sampler over the enumerated, weight-cumulated list.

    Cumulative weights are exact Fractions; a draw compares an exact binary
    rational u * Z against them, so the only randomness entering a draw is
    the 53-bit uniform itself.  Zero-weight tableaux (a = 0 or b = 0 cases)
    occupy zero-width intervals and are never selected.
    """

    def __init__(self, n: int, params: Params, rng: np.random.Generator):
        if n > MAX_EXACT_SIZE:
            raise ValueError(f"exact sampling is limited to n <= {MAX_EXACT_SIZE}")
        self.n = n
        self.params = params
        self._rng = rng
        self._total = normalized_partition(n, params)
        if self._total == 0:
            raise ValueError(f"law is degenerate at {params}")
        self._cells: list[tuple[tuple[Box, int], ...]] = []
        self._cum: list[Fraction] = []
        if n <= en.MAX_MATERIALIZE_SIZE:
            running = Fraction(0)
            for cells, na, nb in en._iter_fillings(n):
                running += _weight_exponents(params, n, na, nb)
                self._cells.append(cells)
                self._cum.append(running)
            assert running == self._total

    def _build(self, cells: tuple[tuple[Box, int], ...]) -> Tableau:
        return Tableau(self.n, {box: en._SYMBOL_OF[code] for box, code in cells})

    def draw(self, count: int = 1) -> list[Tableau]:
        us = [Fraction(self._rng.random()) * self._total for _ in range(count)]
        if self._cells:
            return [
                self._build(self._cells[bisect.bisect_right(self._cum, u)])
                for u in us
            ]
        return self._draw_streaming(us)

    def _draw_streaming(self, us: list[Fraction]) -> list[Tableau]:
        # One enumeration pass serves all draws: sort the quantiles, walk the
        # cumulative weight once, and put results back in draw order.
        order = sorted(range(len(us)), key=us.__getitem__)
        out: list[Tableau | None] = [None] * len(us)
        pos = 0
        running = Fraction(0)
        for cells, na, nb in en._iter_fillings(self.n):
            running += _weight_exponents(self.params, self.n, na, nb)
            while pos < len(order) and us[order[pos]] < running:
                out[order[pos]] = self._build(cells)
                pos += 1
            if pos == len(order):
                break
        assert all(t is not None for t in out)
        return out  # type: ignore[return-value]


def sample_exact(cfg: SamplerConfig) -> Tableau:
    return ExactSampler(cfg.n, cfg.params, make_rng(cfg.seed)).draw(1)[0]


def beta_skeleton(n: int) -> Tableau:
    """The tableau with a Beta in every first-diagonal box and nothing else."""
    return Tableau(n, {(r, n + 1 - r): Symbol.BETA for r in range(1, n + 1)})


def alpha_skeleton(n: int) -> Tableau:
    return Tableau(n, {(r, n + 1 - r): Symbol.ALPHA for r in range(1, n + 1)})


class ChainSampler:
    """Single-box Metropolis chain with the weighted law stationary.

    Proposal: pick a box uniformly; on the first diagonal propose the swapped
    symbol, elsewhere propose one of the two other contents uniformly.  The
    kernel is symmetric, so accepting with min(1, weight ratio) gives detailed
    balance.  Validity violations are plain rejections.
    """

    def __init__(
        self,
        n: int,
        params: Params,
        rng: np.random.Generator,
        initial: Tableau | None = None,
    ):
        if params.a == 0 or params.b == 0:
            raise ValueError("the chain needs strictly positive parameters")
        self.n = n
        self.params = params
        self._rng = rng
        start = beta_skeleton(n) if initial is None else initial
        if start.n != n:
            raise ValueError(f"initial state has size {start.n}, expected {n}")
        if not start.is_valid():
            raise ValueError("initial state is not a valid tableau")
        self._cells: dict[Box, int] = {
            box: en._CODE_OF[sym] for box, sym in start.cells.items()
        }
        self._na = sum(1 for c in self._cells.values() if c == en.ALPHA)
        self._nb = len(self._cells) - self._na
        self._boxes = [
            (r, c)
            for c in range(1, n + 1)
            for r in range(1, n + 2 - c)
        ]
        self.accepted = 0
        self.steps = 0

    def _placement_ok(self, r: int, c: int, new: int) -> bool:
        # Occupying (r, c) at all is barred by an Alpha below in the column or
        # a Beta east in the row, whose clearance strips cover this box.  On
        # top of that the incoming symbol needs its own strip empty: the
        # column above for an Alpha, the row to the left for a Beta.
        cells = self._cells
        for r2 in range(r + 1, self.n + 2 - c):
            if cells.get((r2, c)) == en.ALPHA:
                return False
        for c2 in range(c + 1, self.n + 2 - r):
            if cells.get((r, c2)) == en.BETA:
                return False
        if new == en.ALPHA:
            for r2 in range(1, r):
                if (r2, c) in cells:
                    return False
        else:
            for c2 in range(1, c):
                if (r, c2) in cells:
                    return False
        return True

    def step(self) -> bool:
        self.steps += 1
        rng = self._rng
        r, c = self._boxes[int(rng.integers(0, len(self._boxes)))]
        cur = self._cells.get((r, c), en.EMPTY)
        if r + c == self.n + 1:
            new = en.BETA if cur == en.ALPHA else en.ALPHA
        else:
            others = [s for s in (en.ALPHA, en.BETA, en.EMPTY) if s != cur]
            new = others[int(rng.integers(0, 2))]
        if new != en.EMPTY and not self._placement_ok(r, c, new):
            return False
        dna = (new == en.ALPHA) - (cur == en.ALPHA)
        dnb = (new == en.BETA) - (cur == en.BETA)
        ratio = self.params.a ** (-dna) * self.params.b ** (-dnb)
        if ratio < 1 and Fraction(rng.random()) >= ratio:
            return False
        if new == en.EMPTY:
            del self._cells[(r, c)]
        else:
            self._cells[(r, c)] = new
        self._na += dna
        self._nb += dnb
        self.accepted += 1
        return True

    def run(self, steps: int) -> None:
        for _ in range(steps):
            self.step()

    def current(self) -> Tableau:
        return Tableau(
            self.n, {box: en._SYMBOL_OF[code] for box, code in self._cells.items()}
        )

    def alpha_count_on_diagonal(self, k: int) -> int:
        boxes = diagonal_boxes(self.n, k)
        return sum(1 for b in boxes if self._cells.get(b) == en.ALPHA)

    def beta_count_on_diagonal(self, k: int) -> int:
        boxes = diagonal_boxes(self.n, k)
        return sum(1 for b in boxes if self._cells.get(b) == en.BETA)

    def sample(
        self, count: int | None, burn_in: int = DEFAULT_BURN_IN, thin: int = DEFAULT_THIN
    ) -> Iterator[Tableau]:
        self.run(burn_in)
        produced = 0
        while count is None or produced < count:
            self.run(thin)
            yield self.current()
            produced += 1


def sample_chain(cfg: SamplerConfig) -> Iterator[Tableau]:
    chain = ChainSampler(cfg.n, cfg.params, make_rng(cfg.seed))
    return chain.sample(None, cfg.chain_burn_in, cfg.chain_thin)


def move_graph_connected(n: int) -> tuple[bool, int]:
    """Exhaustive reachability check of the single-box move graph.

    Every valid tableau is a node; edges are the chain's proposals.  Returns
    (connected, node count).  Kept to sizes where the full enumeration is
    cheap; the chain's ergodicity rests on this.
    """
    if n > 5:
        raise ValueError("exhaustive connectivity check is limited to n <= 5")
    states = set()
    for t in en.enumerate_all(n):
        states.add(tuple(sorted((box, en._CODE_OF[s]) for box, s in t.cells.items())))
    start = next(iter(states))
    seen = {start}
    frontier = [start]
    boxes = [(r, c) for c in range(1, n + 1) for r in range(1, n + 2 - c)]
    while frontier:
        state = frontier.pop()
        cells = dict(state)
        for r, c in boxes:
            cur = cells.get((r, c), en.EMPTY)
            if r + c == n + 1:
                proposals = [en.BETA if cur == en.ALPHA else en.ALPHA]
            else:
                proposals = [s for s in (en.ALPHA, en.BETA, en.EMPTY) if s != cur]
            for new in proposals:
                nxt = dict(cells)
                if new == en.EMPTY:
                    del nxt[(r, c)]
                else:
                    nxt[(r, c)] = new
                key = tuple(sorted(nxt.items()))
                if key in states and key not in seen:
                    seen.add(key)
                    frontier.append(key)
    return len(seen) == len(states), len(states)


@dataclass(frozen=True)
class GofReport:
    statistic: float
    pvalue: float
    dof: int
    bins: int
    pooled: int
    impossible: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.impossible and self.pvalue > 1e-3


def goodness_of_fit(
    observed: Mapping, expected: Mapping, min_expected: float = 5.0
) -> GofReport:
    """Chi-square test of observed counts against an exact finite law.

    Categories with expected count below ``min_expected`` are pooled into one
    bin, smallest first, the standard guard for the chi-square approximation.
    Observations outside the support are reported, not silently binned; any
    such observation is already a refutation.
    """
    total = sum(observed.values())
    support = {k: f for k, f in expected.items() if f > 0}
    impossible = tuple(sorted(k for k in observed if k not in support))
    if impossible:
        return GofReport(float("inf"), 0.0, 0, 0, 0, impossible)
    items = sorted(support.items(), key=lambda kv: (kv[1], repr(kv[0])))
    pooled_prob = Fraction(0)
    pooled_obs = 0
    pooled = 0
    kept: list[tuple[float, int]] = []
    for key, prob in items:
        exp = float(prob) * total
        if exp < min_expected and pooled + 1 < len(items):
            pooled_prob += prob
            pooled_obs += observed.get(key, 0)
            pooled += 1
        else:
            kept.append((float(prob), observed.get(key, 0)))
    if pooled:
        kept.append((float(pooled_prob), pooled_obs))
    f_obs = np.array([o for _, o in kept], dtype=float)
    f_exp = np.array([p for p, _ in kept], dtype=float) * total
    f_exp *= f_obs.sum() / f_exp.sum()
    statistic, pvalue = _scipy_stats.chisquare(f_obs, f_exp)
    return GofReport(float(statistic), float(pvalue), len(kept) - 1, len(kept), pooled)


@dataclass(frozen=True)
class PoissonDemo:
    n: int
    k: int
    samples: int
    histogram: Mapping[int, int]
    mean: float
    tv: float
    tv_se: float
    mass_at_zero: float


def empirical_poisson_demo(
    n_large: int,
    p: Params,
    k: int,
    samples: int,
    seed: int = 0,
    burn_in: int | None = None,
    thin: int | None = None,
    bootstrap: int = 200,
) -> PoissonDemo:
    """Monte-Carlo picture of the diagonal-k Alpha-count law at large size.

    The chain supplies thinned draws; the plug-in total variation against
    Poisson(1/2) gets a bootstrap standard error.  This illustrates the limit,
    it does not certify it.

    Unset burn-in and thinning scale with the number of boxes, since one
    sweep costs n(n+1)/2 single-box steps.
    """
    boxes = n_large * (n_large + 1) // 2
    burn_in = 200 * boxes if burn_in is None else burn_in
    thin = 2 * boxes if thin is None else thin
    rng = make_rng(seed)
    chain = ChainSampler(n_large, p, rng)
    chain.run(burn_in)
    hist: Counter[int] = Counter()
    for _ in range(samples):
        chain.run(thin)
        hist[chain.alpha_count_on_diagonal(k)] += 1
    lam = Fraction(1, 2)
    pmf = {c: Fraction(v, samples) for c, v in hist.items()}
    tv = ds.tv_against_poisson(pmf, lam)
    counts = sorted(hist)
    probs = np.array([hist[c] / samples for c in counts])
    tvs = []
    for _ in range(bootstrap):
        resampled = rng.multinomial(samples, probs)
        boot = {
            c: Fraction(int(v), samples) for c, v in zip(counts, resampled) if v
        }
        tvs.append(ds.tv_against_poisson(boot, lam))
    mean = sum(c * v for c, v in hist.items()) / samples
    return PoissonDemo(
        n=n_large,
        k=k,
        samples=samples,
        histogram=dict(sorted(hist.items())),
        mean=float(mean),
        tv=float(tv),
        tv_se=float(np.std(tvs)),
        mass_at_zero=hist.get(0, 0) / samples,
    )
