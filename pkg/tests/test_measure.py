"""Tests for the weighted measure: weights, partition function, marginals."""

import math
from fractions import Fraction

import pytest

import staircase_tableaux.enumeration as en
from staircase_tableaux.enumeration import enumerate_all, weight_profile
from staircase_tableaux.measure import (
    Params,
    brute_force_marginal,
    evaluate_profile,
    falling_factorial,
    format_rational,
    involution_duality_gap,
    joint_probability,
    marginal,
    marginal_first_diagonal,
    marginal_kth_diagonal,
    normalized_partition,
    parse_rational,
    probability,
    subtableau_law_check,
    weight,
)
from staircase_tableaux.tableau import Symbol, Tableau

A = Symbol.ALPHA
B = Symbol.BETA

SEVEN_CORE = {
    (1, 1): A,
    (2, 2): A,
    (3, 2): B,
    (5, 1): B,
    (3, 4): A,
    (1, 7): A,
    (2, 6): A,
    (3, 5): A,
    (4, 4): B,
    (5, 3): A,
    (6, 2): B,
    (7, 1): B,
}


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("2") == 2
    assert parse_rational("0.5") == Fraction(1, 2)


@pytest.mark.parametrize("text", ["x", "1/0", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError, match="not a rational"):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(4, 2)) == "2"


def test_params_validation():
    with pytest.raises(ValueError, match="nonnegative"):
        Params(-1, 1)
    with pytest.raises(ValueError, match="both be zero"):
        Params(0, 0)


def test_params_helpers(asym):
    assert asym.swapped() == Params(3, Fraction(1, 2))
    assert asym.shifted(1, 2) == Params(Fraction(3, 2), 5)
    assert str(asym) == "(a=1/2, b=3)"


def test_falling_factorial():
    assert falling_factorial(Fraction(7, 2), 3) == Fraction(105, 8)
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 0) == 1
    with pytest.raises(ValueError, match="nonnegative"):
        falling_factorial(2, -1)


def test_normalized_partition_spots(unit, asym):
    assert normalized_partition(3, unit) == 24
    assert normalized_partition(1, Params(0, 1)) == 1
    assert normalized_partition(2, Params(2, Fraction(2, 3))) == Fraction(88, 9)
    assert normalized_partition(2, asym) == Fraction(63, 4)


def test_normalized_partition_matches_weight_sum(grid):
    for n in range(1, 6):
        profile = weight_profile(n)
        for p in grid:
            assert evaluate_profile(profile, p) == normalized_partition(n, p)


def test_normalized_partition_rejects_size():
    with pytest.raises(ValueError, match="at least 1"):
        normalized_partition(0, Params(1, 1))


def test_weight(unit, asym):
    # counts (7, 5) leave deficits (0, 2), so only b contributes
    t = Tableau(7, SEVEN_CORE)
    assert weight(t, asym) == 9
    assert weight(t, unit) == 1


def test_probability_spots(unit, asym):
    assert probability(Tableau(1, {(1, 1): A}), unit) == Fraction(1, 2)
    t = Tableau(2, {(1, 2): A, (2, 1): B})
    assert probability(t, unit) == Fraction(1, 6)
    assert probability(t, asym) == Fraction(2, 21)


def test_probability_uniform_at_unit(unit):
    for n in range(1, 5):
        expected = Fraction(1, math.factorial(n + 1))
        for t in enumerate_all(n):
            assert probability(t, unit) == expected


def test_probability_rejects_invalid(asym):
    bad = Tableau(2, {(1, 1): A, (1, 2): B, (2, 1): B})
    assert not bad.is_valid()
    with pytest.raises(ValueError, match="valid tableaux only"):
        probability(bad, asym)


def test_marginal_spots(unit):
    assert marginal(2, unit, 1, 1, A) == Fraction(1, 3)
    assert marginal(3, unit, 1, 2, A) == Fraction(1, 2)
    assert marginal(4, unit, 2, 1, A) == Fraction(1, 20)
    assert marginal(4, unit, 2, 1, B) == Fraction(3, 20)
    assert marginal(4, unit, 2, 1, None) == Fraction(4, 5)


def test_marginal_matches_brute_force(unit, asym):
    for n in range(1, 6):
        for p in (unit, asym):
            for k in range(1, n + 1):
                width = n - k + 1
                for j in range(1, width + 1):
                    for sym in (A, B, None):
                        closed = marginal(n, p, k, j, sym)
                        assert closed == brute_force_marginal(n, p, k, j, sym)


def test_first_diagonal_edge_cases(asym):
    assert marginal(3, asym, 1, 1, None) == 0
    with pytest.raises(ValueError, match="always filled"):
        marginal_first_diagonal(3, asym, 1, None)
    with pytest.raises(ValueError, match="must be in 2"):
        marginal_kth_diagonal(3, asym, 1, 1, A)
    with pytest.raises(ValueError, match="out of range"):
        marginal(3, asym, 2, 3, A)


def test_first_diagonal_is_filled(grid):
    for n in range(1, 6):
        for p in grid:
            for j in range(1, n + 1):
                total = marginal(n, p, 1, j, A) + marginal(n, p, 1, j, B)
                assert total == 1


def test_joint_probability(unit, asym):
    assert joint_probability(4, asym, []) == 1
    one = joint_probability(4, asym, [(2, 1, A)])
    assert one == marginal(4, asym, 2, 1, A)
    pair = [(2, 1, A), (2, 4, A)]
    assert joint_probability(5, unit, pair) == Fraction(1, 180)
    assert joint_probability(6, unit, pair) == Fraction(1, 420)
    with pytest.raises(ValueError, match="contradictory"):
        joint_probability(4, asym, [(1, 1, A), (1, 1, B)])


def test_joint_accepts_encoded_events(unit):
    events = [en.make_event(2, 1, A), en.make_event(2, 4, A)]
    assert joint_probability(5, unit, events) == Fraction(1, 180)


def test_subtableau_identity_corner(unit):
    report = subtableau_law_check(4, unit, 1, 1)
    assert report.sub_size == 4
    assert report.shifted_params == unit
    assert report.distinct_subtableaux == 120
    assert report.max_discrepancy == 0


def test_subtableau_report_fields(unit):
    report = subtableau_law_check(4, unit, 1, 2)
    assert report.n == 4
    assert (report.i, report.j) == (1, 2)
    assert report.sub_size == 3
    assert report.shifted_params == Params(1, 2)
    assert report.distinct_subtableaux == 24
    assert report.max_discrepancy == 0


def test_subtableau_shifted_params(asym):
    report = subtableau_law_check(5, asym, 2, 2)
    assert report.sub_size == 3
    assert report.shifted_params == Params(Fraction(3, 2), 4)
    assert report.max_discrepancy == 0


def test_subtableau_zero_discrepancy(unit):
    for n in range(2, 6):
        for i in range(1, n + 1):
            for j in range(1, n + 2 - i):
                assert subtableau_law_check(n, unit, i, j).max_discrepancy == 0


def test_subtableau_rejects_bad_box(asym):
    with pytest.raises(ValueError, match="not a box"):
        subtableau_law_check(3, asym, 2, 3)
    with pytest.raises(ValueError):
        subtableau_law_check(3, asym, 0, 1)


def test_involution_duality(grid):
    for n in range(1, 6):
        for p in grid:
            assert involution_duality_gap(n, p) == 0


def test_involution_mirrors_marginals(unit, asym):
    # (i, j) -> (j, i) with swapped symbols sends position j to n + 2 - k - j
    for n in range(1, 6):
        for p in (unit, asym):
            q = p.swapped()
            for k in range(1, n + 1):
                width = n - k + 1
                for j in range(1, width + 1):
                    mirror = n + 2 - k - j
                    assert marginal(n, p, k, j, A) == marginal(n, q, k, mirror, B)
