"""Tests for diagonal count laws, moments, and product-formula comparisons."""

from fractions import Fraction

import pytest

from staircase_tableaux.diagonal_stats import (
    ExactDist,
    count_distribution,
    factorial_moment_via_joints,
    gap_respecting,
    independence_gap,
    joint_count_distribution,
    lemma_la_check,
    mixed_factorial_moment,
    mixed_factorial_moment_via_joints,
    poisson_moment_report,
    poisson_pmf,
    product_formula_all_alpha,
    product_formula_mixed,
    theorem4_error_scan,
    theorem4_row,
    theorem7_row,
    tv_against_poisson,
    tv_distance,
    tv_exact,
)
from staircase_tableaux.measure import Params, joint_probability, marginal_kth_diagonal
from staircase_tableaux.tableau import Symbol

A = Symbol.ALPHA
B = Symbol.BETA

F = Fraction

LAW_4_2 = {0: F(17, 24), 1: F(17, 60), 2: F(1, 120)}
JOINT_4_2 = {
    (0, 0): F(9, 20),
    (0, 1): F(1, 4),
    (0, 2): F(1, 120),
    (1, 0): F(1, 4),
    (1, 1): F(1, 30),
    (2, 0): F(1, 120),
}

# half-unit total variation against a Poisson with rate one half, n = 4..10
TV_SECOND_DIAGONAL = {
    4: 0.1018026736206999,
    5: 0.07958045139847769,
    6: 0.0658899752080015,
    7: 0.05641576885879515,
    8: 0.049391408188601146,
    9: 0.04394938878824841,
    10: 0.03960041792886088,
}


def test_exact_dist_validation():
    with pytest.raises(ValueError, match="sum to one"):
        ExactDist({0: F(1, 2)})
    with pytest.raises(ValueError, match="bad mass"):
        ExactDist({0: F(3, 2), 1: F(-1, 2)})


def test_exact_dist_accessors():
    d = ExactDist({0: F(1, 2), 2: F(1, 2)})
    assert d.pmf(0) == F(1, 2)
    assert d.pmf(1) == 0
    assert d.pmf(-1) == 0
    assert d.support == (0, 2)
    assert d.mean() == 1
    assert d.factorial_moment(0) == 1
    assert d.factorial_moment(1) == 1
    assert d.factorial_moment(2) == 1
    assert d.as_dict() == {0: F(1, 2), 2: F(1, 2)}


def test_frozen_laws(unit):
    assert count_distribution(1, unit, 1, A).as_dict() == {0: F(1, 2), 1: F(1, 2)}
    assert count_distribution(2, unit, 2, A).as_dict() == {0: F(5, 6), 1: F(1, 6)}
    assert count_distribution(2, unit, 1, A).as_dict() == {
        0: F(1, 6),
        1: F(2, 3),
        2: F(1, 6),
    }
    assert count_distribution(4, unit, 2, A).as_dict() == LAW_4_2


def test_frozen_joint_laws(unit):
    assert joint_count_distribution(2, unit, 2).as_dict() == {
        (0, 0): F(2, 3),
        (0, 1): F(1, 6),
        (1, 0): F(1, 6),
    }
    assert joint_count_distribution(4, unit, 2).as_dict() == JOINT_4_2


def test_count_distribution_rejects(unit):
    with pytest.raises(ValueError, match="Alpha and Beta"):
        count_distribution(4, unit, 2, None)
    with pytest.raises(ValueError, match="out of range"):
        count_distribution(4, unit, 0, A)


def test_joint_marginalizes_to_laws(unit, asym):
    for n in range(2, 6):
        for k in (2, 3):
            if k > n:
                continue
            for p in (unit, asym):
                joint = joint_count_distribution(n, p, k).as_dict()
                for sym, pick in ((A, 0), (B, 1)):
                    law = count_distribution(n, p, k, sym).as_dict()
                    folded = {}
                    for counts, mass in joint.items():
                        c = counts[pick]
                        folded[c] = folded.get(c, F(0)) + mass
                    assert folded == law


def test_joint_law_swaps_under_involution(asym):
    for n in range(2, 6):
        joint = joint_count_distribution(n, asym, 2).as_dict()
        dual = joint_count_distribution(n, asym.swapped(), 2).as_dict()
        assert joint == {(cb, ca): mass for (ca, cb), mass in dual.items()}


def test_second_diagonal_means(unit):
    for n in range(4, 9):
        law = count_distribution(n, unit, 2, A)
        assert law.mean() == F(n - 1, 2 * (n + 1))
    assert count_distribution(4, unit, 2, A).mean() == F(3, 10)
    assert count_distribution(7, unit, 2, A).mean() == F(3, 8)
    assert count_distribution(8, unit, 2, A).mean() == F(7, 18)


def test_frozen_second_factorial_moments(unit):
    frozen = {4: F(1, 60), 5: F(7, 180), 6: F(5, 84), 7: F(13, 168)}
    for n, value in frozen.items():
        assert count_distribution(n, unit, 2, A).factorial_moment(2) == value


def test_factorial_moments_via_joints(unit, asym):
    for n in range(4, 7):
        for k in (2, 3):
            for p in (unit, asym):
                for sym in (A, B):
                    law = count_distribution(n, p, k, sym)
                    for r in (1, 2, 3):
                        via = factorial_moment_via_joints(n, p, k, sym, r)
                        assert via == law.factorial_moment(r)


def test_mixed_factorial_moment(unit, asym):
    assert mixed_factorial_moment(5, unit, 2, 1, 1) == F(11, 180)
    assert mixed_factorial_moment_via_joints(5, unit, 2, 1, 1) == F(11, 180)
    for n in (4, 5):
        for p in (unit, asym):
            for r1 in (1, 2):
                for r2 in (1, 2):
                    direct = mixed_factorial_moment(n, p, 2, r1, r2)
                    via = mixed_factorial_moment_via_joints(n, p, 2, r1, r2)
                    assert direct == via


def test_lemma_la_frozen():
    assert [lemma_la_check(1, m)[0] for m in range(1, 5)] == [1, 3, 6, 10]
    assert [lemma_la_check(2, m)[0] for m in range(1, 5)] == [0, 0, 3, 15]
    assert lemma_la_check(1, 5) == (15, 15, True)
    assert lemma_la_check(2, 4) == (15, 15, True)
    assert lemma_la_check(3, 2) == (0, 0, True)


def test_lemma_la_sweep():
    for r in range(1, 4):
        for m in range(1, 11):
            lhs, rhs, equal = lemma_la_check(r, m)
            assert equal
            assert lhs == rhs


def test_lemma_la_rejects():
    with pytest.raises(ValueError, match="positive"):
        lemma_la_check(0, 3)
    with pytest.raises(ValueError, match="positive"):
        lemma_la_check(1, -1)


def test_product_formula_exact_on_second_diagonal(unit, asym):
    for n in range(2, 7):
        for p in (unit, asym):
            for j in range(1, n):
                assert product_formula_all_alpha(n, p, (j,)) == marginal_kth_diagonal(
                    n, p, 2, j, A
                )
    assert product_formula_all_alpha(5, unit, (1, 4)) == F(1, 180)
    assert joint_probability(5, unit, [(2, 1, A), (2, 4, A)]) == F(1, 180)


def test_theorem4_rows_frozen(unit):
    row = theorem4_row(6, unit, 2, (1, 3))
    assert (row.exact, row.product, row.delta) == (F(1, 840), F(1, 840), 0)
    assert (row.gap_ok, row.order) == (True, 3)
    row = theorem4_row(7, unit, 2, (1, 3))
    assert (row.exact, row.product, row.delta) == (F(1, 1680), F(1, 1680), 0)


def test_theorem4_crowded_pair(unit):
    # adjacent alphas on the second diagonal are impossible, and the
    # product side vanishes with them
    row = theorem4_row(6, unit, 2, (1, 2))
    assert (row.exact, row.product, row.delta) == (0, 0, 0)
    assert (row.gap_ok, row.order) == (False, 2)


def test_theorem4_single_position_exact_at_k2(unit, asym):
    for n in range(2, 7):
        for p in (unit, asym):
            for j in range(1, n):
                assert theorem4_row(n, p, 2, (j,)).delta == 0


def test_theorem4_deeper_diagonals_are_approximate(unit):
    row = theorem4_row(4, unit, 3, (1,))
    assert (row.exact, row.product) == (F(1, 12), F(1, 20))
    assert row.delta == F(1, 30)
    assert (row.gap_ok, row.order) == (True, 2)


def test_theorem4_position_range(unit):
    with pytest.raises(ValueError, match="out of range"):
        theorem4_row(6, unit, 2, (0, 3))


def test_theorem4_scan_ordering(unit):
    scan = theorem4_error_scan(range(6, 8), unit, 2, [(1, 3), (1, 2)])
    assert [(r.positions, r.n) for r in scan] == [
        ((1, 2), 6),
        ((1, 2), 7),
        ((1, 3), 6),
        ((1, 3), 7),
    ]
    for row in scan:
        again = theorem4_row(row.n, unit, 2, row.positions)
        assert (again.exact, again.product) == (row.exact, row.product)


def test_theorem7_rows_frozen(unit):
    row = theorem7_row(6, unit, 2, (1,), (3,))
    assert row.positions == ((1,), (3,))
    assert (row.exact, row.product) == (F(1, 280), F(1, 588))
    assert row.delta == F(11, 5880)
    assert (row.gap_ok, row.order) == (True, 3)
    row = theorem7_row(7, unit, 2, (1,), (3,))
    assert (row.exact, row.product) == (F(1, 420), F(1, 784))
    assert row.delta == F(13, 11760)
    assert row.scaled == pytest.approx(0.3791666666666667)


def test_theorem7_product_side(unit):
    assert product_formula_mixed(6, unit, 2, (1,), (3,)) == F(1, 588)


def test_theorem7_rejects_overlap(unit):
    with pytest.raises(ValueError, match="disjoint"):
        theorem7_row(6, unit, 2, (1,), (1,))


def test_scaled_is_delta_times_power(unit):
    for row in (
        theorem7_row(6, unit, 2, (1,), (3,)),
        theorem7_row(7, unit, 2, (1,), (3,)),
        theorem4_row(4, unit, 3, (1,)),
    ):
        assert row.scaled == pytest.approx(float(row.delta) * row.n**row.order)


def test_tv_frozen_floats(unit):
    for n, value in TV_SECOND_DIAGONAL.items():
        law = count_distribution(n, unit, 2, A)
        assert abs(law.tv_poisson() - value) < 1e-12


def test_tv_helpers(unit):
    law = count_distribution(4, unit, 2, A)
    assert tv_distance(law, law) == 0.0
    assert tv_distance(law, F(1, 2)) == law.tv_poisson()
    assert tv_against_poisson(law.as_dict()) == law.tv_poisson()
    assert tv_exact(law.as_dict(), {0: F(1)}) == F(7, 24)
    assert poisson_pmf(0) == pytest.approx(0.6065306597126334)
    assert poisson_pmf(-1) == 0.0


def test_independence_gap_frozen(unit):
    frozen = {
        5: F(4849, 64800),
        6: F(719881, 12700800),
        7: F(13747, 301056),
        8: F(360973663, 9405849600),
    }
    for n, value in frozen.items():
        assert independence_gap(n, unit, 2) == value


def test_poisson_moment_report(unit):
    report = poisson_moment_report(7, unit, 2, A, 2)
    assert report.r == 2
    assert report.exact_value == F(13, 168)
    assert report.target == F(1, 4)
    assert report.abs_error == F(29, 168)


def test_moment_errors_shrink(unit):
    # slow: exact laws up to n = 10 for three diagonals
    for k in (2, 3, 4):
        for r in (1, 2):
            errors = [
                poisson_moment_report(n, unit, k, A, r).abs_error
                for n in range(k + 3, 11)
            ]
            assert all(x > y for x, y in zip(errors, errors[1:]))
    for n in range(4, 11):
        assert poisson_moment_report(n, unit, 2, A, 1).abs_error == F(1, n + 1)


def test_gap_respecting():
    assert gap_respecting((1, 3), 2)
    assert not gap_respecting((1, 2), 2)
    assert gap_respecting((1, 4, 7), 3)
    assert not gap_respecting((1, 3, 5), 3)
