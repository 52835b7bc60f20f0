"""Exact probability measure on valid staircase tableaux.

Weights are parametrized by nonnegative rationals (a, b): a tableau with
n_alpha Alphas and n_beta Betas gets normalized weight
a**(n - n_alpha) * b**(n - n_beta), and the total weight over all valid
size-n tableaux has the closed form (a + b + n - 1)_n, the falling
factorial.  a = 0 and b = 0 encode the infinite-bias limits; everything is
plain rational arithmetic with 0**0 = 1.

Closed-form marginals for single diagonal cells are provided next to a
brute-force route that sums the exact weights over a filtered enumeration;
the two must agree cell for cell, and the tests enforce that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import enumeration as en
from .tableau import Symbol, Tableau

Rational = Fraction | int


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or a plain integer/decimal literal into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class Params:
    """Weight parameters; a = 0 or b = 0 are allowed, but not both.

    At a = b = 0 the total weight vanishes for every size, so no measure
    exists under plain rational evaluation; the constructor rejects it.
    """

    a: Fraction
    b: Fraction

    def __init__(self, a: Rational, b: Rational):
        a = Fraction(a)
        b = Fraction(b)
        if a < 0 or b < 0:
            raise ValueError("parameters must be nonnegative")
        if a == 0 and b == 0:
            raise ValueError("a and b cannot both be zero (degenerate normalization)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def swapped(self) -> "Params":
        return Params(self.b, self.a)

    def shifted(self, da: Rational, db: Rational) -> "Params":
        return Params(self.a + Fraction(da), self.b + Fraction(db))

    def __str__(self) -> str:
        return f"(a={self.a}, b={self.b})"


#: Parameter points used by the verification sweeps: the symmetric point, the
#: two one-sided infinite-bias limits, and two asymmetric rational points.
DEFAULT_PARAMS_GRID: tuple[Params, ...] = (
    Params(1, 1),
    Params(0, 1),
    Params(1, 0),
    Params(Fraction(1, 2), 3),
    Params(2, Fraction(2, 3)),
)


def falling_factorial(x: Rational, r: int) -> Fraction:
    """(x)_r = x (x-1) ... (x-r+1), with (x)_0 = 1."""
    if r < 0:
        raise ValueError("order must be nonnegative")
    out = Fraction(1)
    x = Fraction(x)
    for t in range(r):
        out *= x - t
    return out


def normalized_partition(n: int, p: Params) -> Fraction:
    """Total normalized weight of all valid size-n tableaux: (a+b+n-1)_n."""
    if n < 1:
        raise ValueError("size must be at least 1")
    return falling_factorial(p.a + p.b + n - 1, n)


def weight(t: Tableau, p: Params) -> Fraction:
    """Unnormalized weight a**(n - #Alpha) * b**(n - #Beta)."""
    na, nb = t.symbol_counts()
    return p.a ** (t.n - na) * p.b ** (t.n - nb)


def probability(t: Tableau, p: Params) -> Fraction:
    """Exact probability of a valid tableau under the (a, b) measure."""
    if not t.is_valid():
        raise ValueError("probability is defined for valid tableaux only")
    return weight(t, p) / normalized_partition(t.n, p)


def evaluate_profile(profile: dict[tuple[int, int], int], p: Params) -> Fraction:
    """Sum count * a**da * b**db over a weight-exponent profile."""
    total = Fraction(0)
    for (da, db), cnt in profile.items():
        total += cnt * p.a**da * p.b**db
    return total


EventLike = tuple[int, int, Symbol | None]


def _event_codes(events: Iterable[EventLike]) -> en.EventSet:
    return frozenset(en.make_event(k, j, content) for k, j, content in events)


def joint_probability(n: int, p: Params, events: Iterable[EventLike]) -> Fraction:
    """Probability that every listed diagonal cell shows its listed content.

    Brute force: exact weight sum over the filtered enumeration divided by
    the partition closed form.  This is the oracle the closed-form marginals
    and every asymptotic formula are tested against.
    """
    profile = en.weight_profile(n, _event_codes(events))
    return evaluate_profile(profile, p) / normalized_partition(n, p)


def marginal_first_diagonal(n: int, p: Params, j: int, symbol: Symbol) -> Fraction:
    """Closed-form law of the first-diagonal cell at position j.

    Alpha and Beta probabilities sum to one: first-diagonal boxes are never
    empty.
    """
    if not 1 <= j <= n:
        raise ValueError(f"position {j} out of range on the first diagonal")
    denom = n + p.a + p.b - 1
    if symbol is Symbol.ALPHA:
        return (j + p.b - 1) / denom
    if symbol is Symbol.BETA:
        return (n - j + p.a) / denom
    raise ValueError("first-diagonal cells are always filled; ask for Alpha or Beta")


def marginal_kth_diagonal(
    n: int, p: Params, k: int, j: int, symbol: Symbol | None
) -> Fraction:
    """Closed-form law of the diagonal-k cell at position j, for k >= 2.

    The Empty probability is the complement of the two symbol probabilities.
    """
    if not 2 <= k <= n:
        raise ValueError(f"diagonal index {k} must be in 2..{n}")
    if not 1 <= j <= n - k + 1:
        raise ValueError(f"position {j} out of range on diagonal {k}")
    denom = falling_factorial(n - k + p.a + p.b + 1, 2)
    alpha = (p.b + j - 1) / denom
    beta = (n - k - j + p.a + 1) / denom
    if symbol is Symbol.ALPHA:
        return alpha
    if symbol is Symbol.BETA:
        return beta
    if symbol is None:
        return 1 - alpha - beta
    raise ValueError("symbol must be Alpha, Beta or None (empty)")


def marginal(n: int, p: Params, k: int, j: int, symbol: Symbol | None) -> Fraction:
    """Closed-form diagonal-cell law, dispatching on the diagonal index."""
    if k == 1:
        if symbol is None:
            return Fraction(0)
        return marginal_first_diagonal(n, p, j, symbol)
    return marginal_kth_diagonal(n, p, k, j, symbol)


@lru_cache(maxsize=64)
def _box_profiles(n: int):
    return en.box_content_profile(n)


def brute_force_marginal(
    n: int, p: Params, k: int, j: int, symbol: Symbol | None
) -> Fraction:
    """Marginal from the enumeration itself, bypassing the closed forms."""
    from .tableau import DiagonalAddress

    box = DiagonalAddress(k, j).box(n)
    code = en._CODE_OF[symbol]
    profile = _box_profiles(n)[(box, code)]
    return evaluate_profile(profile, p) / normalized_partition(n, p)


@dataclass(frozen=True)
class SubtableauReport:
    n: int
    i: int
    j: int
    sub_size: int
    params: Params
    shifted_params: Params
    distinct_subtableaux: int
    max_discrepancy: Fraction

    @property
    def ok(self) -> bool:
        return self.max_discrepancy == 0


@lru_cache(maxsize=256)
def _sub_profiles(n: int, i: int, j: int):
    return en.subtableau_profile(n, i, j)


def subtableau_law_check(n: int, p: Params, i: int, j: int) -> SubtableauReport:
    """Compare the pushforward under corner deletion with the direct law.

    Deleting the first i-1 rows and j-1 columns of a random size-n tableau
    yields a size n-i-j+2 tableau whose law is the same measure with
    parameters (a+i-1, b+j-1).  The check is exact: the maximum rational
    discrepancy over all subtableaux must be zero.
    """
    m = n - i - j + 2
    if m < 1:
        raise ValueError(f"({i}, {j}) is not a box of the size-{n} staircase")
    shifted = p.shifted(i - 1, j - 1)
    z_n = normalized_partition(n, p)
    z_m = normalized_partition(m, shifted)
    pushed: dict[tuple, Fraction] = {}
    for (sub_key, da, db), cnt in _sub_profiles(n, i, j).items():
        pushed[sub_key] = pushed.get(sub_key, Fraction(0)) + cnt * p.a**da * p.b**db / z_n
    worst = Fraction(0)
    for sub_key, prob in pushed.items():
        sub_na = sum(1 for _, code in sub_key if code == en.ALPHA)
        sub_nb = len(sub_key) - sub_na
        direct = (
            shifted.a ** (m - sub_na) * shifted.b ** (m - sub_nb) / z_m
        )
        worst = max(worst, abs(prob - direct))
    return SubtableauReport(
        n=n,
        i=i,
        j=j,
        sub_size=m,
        params=p,
        shifted_params=shifted,
        distinct_subtableaux=len(pushed),
        max_discrepancy=worst,
    )


def involution_duality_gap(n: int, p: Params) -> Fraction:
    """Max gap between the (a, b) cell laws and their mirrored (b, a) twins.

    The transpose-and-swap involution sends the Alpha law at (k, j) under
    (a, b) to the Beta law at (k, n-k-j+2) under (b, a); this sweeps every
    diagonal cell with both the closed forms and the brute-force route and
    returns the largest absolute difference (zero when everything is
    consistent).
    """
    q = p.swapped()
    worst = Fraction(0)
    for k in range(1, n + 1):
        for j in range(1, n - k + 2):
            mirror = n - k - j + 2
            for route in (marginal, brute_force_marginal):
                lhs = route(n, p, k, j, Symbol.ALPHA)
                rhs = route(n, q, k, mirror, Symbol.BETA)
                worst = max(worst, abs(lhs - rhs))
    return worst
