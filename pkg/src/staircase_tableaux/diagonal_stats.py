"""Exact laws of diagonal symbol counts and convergence diagnostics.

The count of Alphas (or Betas) on a fixed diagonal of a random weighted
tableau has an exact rational law at every finite size; this module computes
those laws from a single enumeration pass, takes factorial moments two
independent ways, and measures the distance to the Poisson(1/2) limit.

The asymptotic product formulas for joint cell probabilities are evaluated
next to the exact values so their remainders can be scanned at a sequence
of sizes: a remainder claimed to be O(n^-s) should stay bounded after
multiplying by n^s.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath

from . import enumeration as en
from .measure import Params, falling_factorial, joint_probability, marginal, normalized_partition
from .tableau import Symbol

HALF = Fraction(1, 2)

#: Working precision (bits) for the irrational Poisson reference values.
_PRECISION = 128


def _coerce_slot(c):
    if isinstance(c, tuple):
        return tuple(int(x) for x in c)
    return int(c)


class ExactDist:
    """A finitely supported probability law with exact rational masses.

    Slots are nonnegative integers (count laws) or integer pairs (joint count
    laws); the moment helpers only make sense for the integer case.
    """

    __slots__ = ("_pmf",)

    def __init__(self, pmf: Mapping):
        cleaned = {_coerce_slot(c): Fraction(q) for c, q in pmf.items() if q != 0}
        for c, q in cleaned.items():
            parts = c if isinstance(c, tuple) else (c,)
            if min(parts) < 0 or q < 0:
                raise ValueError(f"bad mass {q} at {c}")
        if sum(cleaned.values()) != 1:
            raise ValueError("masses must sum to one exactly")
        self._pmf = dict(sorted(cleaned.items()))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._pmf)

    def pmf(self, c: int) -> Fraction:
        return self._pmf.get(c, Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self._pmf)

    def mean(self) -> Fraction:
        return sum((Fraction(c) * q for c, q in self._pmf.items()), Fraction(0))

    def factorial_moment(self, r: int) -> Fraction:
        return sum(
            (falling_factorial(c, r) * q for c, q in self._pmf.items()), Fraction(0)
        )

    def tv_poisson(self, lam: Fraction = HALF) -> float:
        return tv_against_poisson(self._pmf, lam)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactDist) and self._pmf == other._pmf

    def __repr__(self) -> str:
        inner = ", ".join(f"{c}: {q}" for c, q in self._pmf.items())
        return f"ExactDist({{{inner}}})"


def joint_count_distribution(n: int, p: Params, k: int) -> ExactDist:
    """Exact joint law of (#Alpha, #Beta) on diagonal k of a random tableau."""
    z = normalized_partition(n, p)
    out: dict[tuple[int, int], Fraction] = {}
    for (ca, cb, da, db), cnt in en.diagonal_joint_profile(n, k).items():
        w = cnt * p.a**da * p.b**db
        if w:
            key = (ca, cb)
            out[key] = out.get(key, Fraction(0)) + w
    return ExactDist({key: w / z for key, w in out.items()})


def count_distribution(n: int, p: Params, k: int, symbol: Symbol) -> ExactDist:
    """Exact law of the number of `symbol`s on diagonal k."""
    if symbol not in (Symbol.ALPHA, Symbol.BETA):
        raise ValueError("counts are tracked for Alpha and Beta")
    idx = 0 if symbol is Symbol.ALPHA else 1
    pmf: dict[int, Fraction] = {}
    for key, q in joint_count_distribution(n, p, k).as_dict().items():
        c = key[idx]
        pmf[c] = pmf.get(c, Fraction(0)) + q
    return ExactDist(pmf)


def factorial_moment_via_joints(
    n: int, p: Params, k: int, symbol: Symbol, r: int
) -> Fraction:
    """r-th factorial moment as r! times the sum of r-cell joint probabilities.

    Independent of the count-law route: each term is an exact weight sum over
    the enumeration filtered by the r cell events.
    """
    if r < 1:
        raise ValueError("order must be at least 1")
    width = n - k + 1
    total = Fraction(0)
    for js in itertools.combinations(range(1, width + 1), r):
        total += joint_probability(n, p, [(k, j, symbol) for j in js])
    return math.factorial(r) * total


def mixed_factorial_moment(n: int, p: Params, k: int, r1: int, r2: int) -> Fraction:
    """E[(#Alpha)_{r1} (#Beta)_{r2}] on diagonal k, from the exact joint law."""
    total = Fraction(0)
    for (ca, cb), q in joint_count_distribution(n, p, k).as_dict().items():
        total += falling_factorial(ca, r1) * falling_factorial(cb, r2) * q
    return total


def mixed_factorial_moment_via_joints(
    n: int, p: Params, k: int, r1: int, r2: int
) -> Fraction:
    """Same moment via r1!*r2! times a sum over disjoint cell-position pairs."""
    width = n - k + 1
    positions = range(1, width + 1)
    total = Fraction(0)
    for a_js in itertools.combinations(positions, r1):
        rest = [j for j in positions if j not in a_js]
        for b_js in itertools.combinations(rest, r2):
            events = [(k, j, Symbol.ALPHA) for j in a_js]
            events += [(k, j, Symbol.BETA) for j in b_js]
            total += joint_probability(n, p, events)
    return math.factorial(r1) * math.factorial(r2) * total


def _gapped_tuples(r: int, m: int, gap: int) -> Iterable[tuple[int, ...]]:
    """Ascending r-tuples from 1..m with consecutive differences >= gap."""

    def rec(prefix: tuple[int, ...], lo: int):
        if len(prefix) == r:
            yield prefix
            return
        for j in range(lo, m + 1):
            yield from rec(prefix + (j,), j + gap)

    yield from rec((), 1)


def lemma_la_check(r: int, m: int) -> tuple[Fraction, Fraction, bool]:
    """Both sides of the gapped-tuple product identity, and their equality.

    The sum of prod(j) over ascending r-tuples from 1..m with gaps of at
    least 2 equals (m+1)_{2r} / (2^r r!).
    """
    if r < 1 or m < 1:
        raise ValueError("order and range must be positive")
    lhs = Fraction(0)
    for js in _gapped_tuples(r, m, 2):
        prod = Fraction(1)
        for j in js:
            prod *= j
        lhs += prod
    rhs = falling_factorial(m + 1, 2 * r) / (2**r * math.factorial(r))
    return lhs, rhs, lhs == rhs


def gap_respecting(js: Sequence[int], k: int) -> bool:
    return all(js[i + 1] - js[i] >= k for i in range(len(js) - 1))


def product_formula_all_alpha(n: int, p: Params, js: Sequence[int]) -> Fraction:
    """Leading-order product for an all-Alpha cell tuple on a diagonal.

    The formula depends on the positions only; its remainder is controlled
    when consecutive positions are at least the diagonal index apart.
    """
    r = len(js)
    out = Fraction(1)
    for l in range(1, r + 1):
        num = p.b + js[r - l] - 2 * r + 2 * l - 1
        den = falling_factorial(n + p.a + p.b - 2 * r + 2 * l - 1, 2)
        out *= num / den
    return out


def product_formula_mixed(
    n: int, p: Params, k: int, alpha_js: Sequence[int], beta_js: Sequence[int]
) -> Fraction:
    """Product of the single-cell closed-form marginals over a mixed tuple."""
    out = Fraction(1)
    for j in alpha_js:
        out *= marginal(n, p, k, j, Symbol.ALPHA)
    for j in beta_js:
        out *= marginal(n, p, k, j, Symbol.BETA)
    return out


@dataclass(frozen=True)
class ScanRow:
    """One size in a remainder scan: exact value, product value, residual.

    `scaled` is |exact - product| * n**order when the positions respect the
    gap condition (the remainder claim), and exact * n**order otherwise (the
    decay claim for crowded tuples, where the product does not apply).
    """

    n: int
    positions: tuple
    exact: Fraction
    product: Fraction
    delta: Fraction
    gap_ok: bool
    order: int
    scaled: float


def theorem4_row(n: int, p: Params, k: int, js: Sequence[int]) -> ScanRow:
    js = tuple(sorted(js))
    r = len(js)
    if not js or js[0] < 1 or js[-1] > n - k + 1:
        raise ValueError(f"positions {js} out of range for diagonal {k} at size {n}")
    exact = joint_probability(n, p, [(k, j, Symbol.ALPHA) for j in js])
    ok = gap_respecting(js, k)
    if ok:
        product = product_formula_all_alpha(n, p, js)
        delta = exact - product
        order = r + 1
        scaled = float(abs(delta)) * n**order
    else:
        product = Fraction(0)
        delta = exact
        order = r
        scaled = float(exact) * n**order
    return ScanRow(n, js, exact, product, delta, ok, order, scaled)


def theorem4_error_scan(
    n_range: Iterable[int], p: Params, k: int, index_tuples: Iterable[Sequence[int]]
) -> list[ScanRow]:
    """Exact-vs-product rows for each size and each Alpha position tuple.

    Rows come out sorted by (tuple, n) so sweep output is canonical no matter
    how the inputs were ordered.
    """
    tuples = sorted(tuple(sorted(js)) for js in index_tuples)
    return [theorem4_row(n, p, k, js) for js in tuples for n in sorted(n_range)]


def theorem7_row(
    n: int, p: Params, k: int, alpha_js: Sequence[int], beta_js: Sequence[int]
) -> ScanRow:
    alpha_js = tuple(sorted(alpha_js))
    beta_js = tuple(sorted(beta_js))
    merged = tuple(sorted(alpha_js + beta_js))
    if len(set(merged)) != len(merged):
        raise ValueError("alpha and beta positions must be disjoint")
    if merged and (merged[0] < 1 or merged[-1] > n - k + 1):
        raise ValueError(f"positions {merged} out of range for diagonal {k} at size {n}")
    events = [(k, j, Symbol.ALPHA) for j in alpha_js]
    events += [(k, j, Symbol.BETA) for j in beta_js]
    exact = joint_probability(n, p, events)
    ok = gap_respecting(merged, k)
    r = len(merged)
    if ok:
        product = product_formula_mixed(n, p, k, alpha_js, beta_js)
        delta = exact - product
        order = r + 1
        scaled = float(abs(delta)) * n**order
    else:
        product = Fraction(0)
        delta = exact
        order = r
        scaled = float(exact) * n**order
    return ScanRow(n, (alpha_js, beta_js), exact, product, delta, ok, order, scaled)


def theorem7_error_scan(
    n_range: Iterable[int],
    p: Params,
    k: int,
    index_tuples: Iterable[tuple[Sequence[int], Sequence[int]]],
) -> list[ScanRow]:
    """Mixed Alpha/Beta rows; one (alpha positions, beta positions) pair each."""
    tuples = sorted(
        (tuple(sorted(a)), tuple(sorted(b))) for a, b in index_tuples
    )
    return [
        theorem7_row(n, p, k, a, b) for a, b in tuples for n in sorted(n_range)
    ]


def _poisson_mpf(c: int, lam: Fraction):
    lam_mp = mpmath.mpf(lam.numerator) / mpmath.mpf(lam.denominator)
    return mpmath.exp(-lam_mp) * lam_mp**c / mpmath.factorial(c)


def poisson_pmf(c: int, lam: Fraction = HALF) -> float:
    """Poisson mass at c, evaluated at high working precision."""
    if c < 0:
        return 0.0
    with mpmath.workprec(_PRECISION):
        return float(_poisson_mpf(c, Fraction(lam)))


def tv_against_poisson(pmf: Mapping[int, Fraction], lam: Fraction = HALF) -> float:
    """Total variation distance between a finitely supported law and Poisson.

    Computed as half the mass difference over the finite support plus half
    the Poisson tail beyond it, which is exact for a law that puts no mass
    past its largest support point.
    """
    lam = Fraction(lam)
    top = max(pmf, default=-1)
    with mpmath.workprec(_PRECISION):
        acc = mpmath.mpf(0)
        tail = mpmath.mpf(1)
        for c in range(top + 1):
            ref = _poisson_mpf(c, lam)
            tail -= ref
            q = Fraction(pmf.get(c, 0))
            qm = mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)
            acc += abs(qm - ref)
        return float((acc + tail) / 2)


def tv_exact(d1: Mapping[int, Fraction], d2: Mapping[int, Fraction]) -> Fraction:
    """Exact total variation distance between two finitely supported laws."""
    keys = set(d1) | set(d2)
    acc = Fraction(0)
    for c in keys:
        acc += abs(Fraction(d1.get(c, 0)) - Fraction(d2.get(c, 0)))
    return acc / 2


def tv_distance(d: ExactDist, reference) -> float:
    """Distance from an exact law to a reference law.

    The reference is another ExactDist (exact half-l1), or a rational rate,
    shorthand for the Poisson law with that mean (tail mass beyond d's
    support included).
    """
    if isinstance(reference, ExactDist):
        return float(tv_exact(d.as_dict(), reference.as_dict()))
    return tv_against_poisson(d.as_dict(), Fraction(reference))


@dataclass(frozen=True)
class MomentReport:
    """A factorial moment next to its limit target."""

    r: int
    exact_value: Fraction
    target: Fraction
    abs_error: Fraction


def poisson_moment_report(
    n: int, p: Params, k: int, symbol: Symbol, r: int
) -> MomentReport:
    """r-th factorial moment of the diagonal count against the limit (1/2)^r."""
    exact = count_distribution(n, p, k, symbol).factorial_moment(r)
    target = HALF**r
    return MomentReport(r, exact, target, abs(exact - target))


def independence_gap(n: int, p: Params, k: int) -> Fraction:
    """Exact distance between the joint count law and the product law.

    Total variation between the law of the (#Alpha, #Beta) pair on diagonal
    k and the product of its own marginals; it vanishes in the limit where
    the pair becomes independent.
    """
    joint = joint_count_distribution(n, p, k).as_dict()
    alpha = count_distribution(n, p, k, Symbol.ALPHA)
    beta = count_distribution(n, p, k, Symbol.BETA)
    keys = set(joint)
    for ca in alpha.support:
        for cb in beta.support:
            keys.add((ca, cb))
    acc = Fraction(0)
    for ca, cb in keys:
        acc += abs(joint.get((ca, cb), Fraction(0)) - alpha.pmf(ca) * beta.pmf(cb))
    return acc / 2
