"""Tests for corner frames, D-regions, and the configuration-count tables."""

from fractions import Fraction

import pytest

from staircase_tableaux.measure import Params
from staircase_tableaux.structure import (
    ab_path,
    alpha_decomposition_check,
    beta_decomposition_check,
    c_table_comparison,
    compute_m,
    connected_symbols,
    corner_frame,
    corner_tableau,
    d_connected,
    d_region,
    direct_configuration_count,
    extract_c_table,
    hat_k,
    path_connected_symbols,
    region_boxes,
    structure_sweep,
    verify_lemma3,
)
from staircase_tableaux.enumeration import enumerate_all
from staircase_tableaux.tableau import Symbol, Tableau

A = Symbol.ALPHA
B = Symbol.BETA

F = Fraction

# size-11 worked example: two conditioned cells on diagonal 8, positions 1 and 4
ELEVEN = {
    (1, 11): A,
    (2, 10): B,
    (3, 9): A,
    (4, 8): A,
    (5, 7): B,
    (6, 6): A,
    (7, 5): A,
    (8, 4): B,
    (9, 3): B,
    (10, 2): B,
    (11, 1): B,
    (1, 10): A,
    (4, 7): A,
    (4, 1): A,
    (7, 3): B,
    (6, 3): A,
    (6, 1): B,
    (1, 4): B,
}
EVENTS = [(8, 1, A), (8, 4, B)]
CONNECTED = frozenset({(1, 10), (4, 7), (6, 1), (6, 3), (7, 3)})
BOUNDARY = (
    (11, 1),
    (10, 1),
    (9, 1),
    (8, 1),
    (7, 1),
    (6, 1),
    (5, 1),
    (4, 1),
    (4, 2),
    (4, 3),
    (4, 4),
    (3, 4),
    (2, 4),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 7),
    (1, 8),
    (1, 9),
    (1, 10),
    (1, 11),
)
PAIRING = (
    ((1, 10), (2, 10)),
    ((4, 7), (5, 7)),
    ((6, 1), (6, 6)),
    ((6, 3), (9, 3)),
    ((7, 3), (7, 5)),
)


@pytest.fixture(scope="module")
def eleven():
    t = Tableau(11, ELEVEN)
    assert t.is_valid()
    return t


def test_compute_m():
    assert compute_m((1, 2, 5), 3) == compute_m([1, 2, 5], 3)
    stat = compute_m((1, 2, 5), 3)
    assert (stat.m, stat.k, stat.j_list) == (2, 3, (1, 2, 5))
    assert compute_m((1, 4), 8).m == 2


def test_compute_m_rejects():
    with pytest.raises(ValueError, match="at least one"):
        compute_m((), 2)
    with pytest.raises(ValueError, match="strictly increasing"):
        compute_m((3, 1), 2)
    with pytest.raises(ValueError, match="start at 1"):
        compute_m((0, 2), 2)


def test_hat_k():
    assert hat_k(6, compute_m((1, 3, 5), 6)) == 10
    assert hat_k(8, compute_m((1, 4), 8)) == 11


def test_corner_frame_eleven():
    frame = corner_frame(11, 8, (1, 4))
    assert (frame.m, frame.hat_size) == (2, 11)
    assert (frame.row_offset, frame.col_offset) == (0, 0)
    assert frame.bound == 8
    assert len(region_boxes(frame)) == 57


def test_corner_frame_shifted():
    frame = corner_frame(12, 8, (2, 5))
    assert (frame.m, frame.hat_size) == (2, 11)
    assert (frame.row_offset, frame.col_offset) == (0, 1)
    assert frame.corner_positions == (1, 4)
    assert frame.bound == 8
    assert frame.to_host((1, 1)) == (1, 2)


def test_corner_frame_rejects():
    with pytest.raises(ValueError, match="must be in 2"):
        corner_frame(3, 1, (1,))
    with pytest.raises(ValueError, match="out of range"):
        corner_frame(3, 2, (5,))
    with pytest.raises(ValueError, match="at least one"):
        corner_frame(3, 2, ())


def test_corner_tableau_identity(eleven):
    frame, corner = corner_tableau(eleven, 8, (1, 4))
    assert frame == corner_frame(11, 8, (1, 4))
    assert corner == eleven


def test_corner_tableau_needs_filled_cells(eleven):
    with pytest.raises(ValueError, match="conditioned cell .* is empty"):
        corner_tableau(eleven, 8, (2,))


def test_verify_lemma3_eleven(eleven):
    report = verify_lemma3(eleven, 8, EVENTS)
    assert report.ok
    assert report.connected == CONNECTED
    assert report.connected_host == CONNECTED
    assert report.path_connected == CONNECTED
    assert report.routes_agree
    assert report.closure_closed
    assert report.within_bound
    assert report.pairing == PAIRING
    assert report.pairing_ok
    assert len(report.region) == 57


def test_connected_routes_directly(eleven):
    frame, corner = corner_tableau(eleven, 8, (1, 4))
    assert connected_symbols(corner, frame) == CONNECTED
    assert path_connected_symbols(corner, frame) == CONNECTED
    assert d_connected(eleven, 8, EVENTS) == CONNECTED


def test_d_region_eleven(eleven):
    region = d_region(eleven, 8, EVENTS)
    assert region.boundary == BOUNDARY
    assert len(region.interior) == 57
    assert region.interior == region_boxes(corner_frame(11, 8, (1, 4)))


def test_two_hop_variant(eleven):
    t2 = eleven.with_cell(6, 3, None).with_cell(3, 3, A)
    assert t2.is_valid()
    report = verify_lemma3(t2, 8, EVENTS)
    assert report.ok
    assert report.connected == frozenset({(1, 10), (3, 3), (4, 7), (6, 1), (7, 3)})
    assert report.routes_agree
    assert ab_path(t2, (3, 3), 8, EVENTS) == ((3, 3), (7, 3))


def test_disconnected_variant(eleven):
    t4 = eleven.with_cell(6, 3, None).with_cell(7, 3, None).with_cell(3, 3, A)
    assert t4.is_valid()
    report = verify_lemma3(t4, 8, EVENTS)
    assert report.ok
    assert report.connected == frozenset({(1, 10), (4, 7), (6, 1)})
    assert report.routes_agree
    assert ab_path(t4, (3, 3), 8, EVENTS) == ((3, 3),)


def test_ab_path_rejects(eleven):
    with pytest.raises(ValueError, match="is empty"):
        ab_path(eleven, (2, 2), 8, EVENTS)
    with pytest.raises(ValueError, match="excluded diagonal"):
        ab_path(eleven, (9, 3), 8, EVENTS)
    with pytest.raises(ValueError, match="excluded diagonal"):
        ab_path(eleven, (4, 1), 8, EVENTS)


def test_verify_lemma3_rejects(eleven):
    with pytest.raises(ValueError, match="inconsistent with the events"):
        verify_lemma3(eleven, 8, [(8, 1, B)])
    with pytest.raises(ValueError, match="is empty, inconsistent"):
        verify_lemma3(eleven, 8, [(8, 2, A)])
    with pytest.raises(ValueError, match="event on diagonal 7, expected 8"):
        verify_lemma3(eleven, 8, [(7, 1, A)])


def test_forced_symbol_rule():
    # any filled box off the first diagonal needs an alpha at the end of its
    # row and a beta at the end of its column
    for n in (4, 5):
        for t in enumerate_all(n):
            for (i, j), _sym in t.cells.items():
                if i + j == n + 1:
                    continue
                assert t.get(i, n + 1 - i) is A
                assert t.get(n + 1 - j, j) is B


SWEEP_CENSUS = {
    (3, 2): (12, 0),
    (4, 2): (78, 0),
    (4, 3): (66, 0),
    (5, 2): (552, 0),
    (5, 3): (480, 0),
    (5, 4): (396, 0),
}


def test_structure_sweep_small():
    for (n, k), (cases, disagreements) in SWEEP_CENSUS.items():
        got_cases, got_disagreements, failures = structure_sweep(n, k)
        assert (got_cases, got_disagreements) == (cases, disagreements)
        assert failures == []


def test_structure_sweep_size_six():
    census = {2: (4320, 0), 3: (3894, 0), 4: (3534, 8), 5: (2772, 0)}
    for k, (cases, disagreements) in census.items():
        got_cases, got_disagreements, failures = structure_sweep(6, k)
        assert (got_cases, got_disagreements) == (cases, disagreements)
        assert failures == []


def test_extract_c_table():
    table = extract_c_table(2)
    assert table.as_ints() == (1,)
    assert table.equations == 4
    assert table.ok
    assert table.consistent and table.integral and table.nonnegative
    assert table.leading_one
    table = extract_c_table(3)
    assert table.as_ints() == (1, 2)
    assert table.equations == 6
    assert table.ok
    table = extract_c_table(4)
    assert table.as_ints() == (1, 4, 6)
    assert table.equations == 8
    assert table.ok


def test_extract_c_table_rejects():
    with pytest.raises(ValueError, match="at least 2"):
        extract_c_table(1)
    with pytest.raises(ValueError, match="3 distinct sizes"):
        extract_c_table(3, n_range=(5,))


def test_c_table_comparison():
    cmp2 = c_table_comparison(2)
    assert cmp2.direct == (1,)
    assert cmp2.mismatches == ()
    cmp3 = c_table_comparison(3)
    assert cmp3.direct == (1, 2)
    assert cmp3.mismatches == ()
    cmp4 = c_table_comparison(4)
    assert cmp4.direct == (1, 4, 4)
    assert cmp4.mismatches == ((2, F(6), 4),)


def test_direct_configuration_count():
    assert direct_configuration_count(2, 0) == 1
    assert direct_configuration_count(2, 1) == 0
    assert direct_configuration_count(3, 1) == 2
    assert direct_configuration_count(4, 1) == 4
    assert direct_configuration_count(4, 2) == 4
    assert direct_configuration_count(2, -1) == 0


def test_decomposition_checks(unit):
    rep = alpha_decomposition_check(7, unit, 2, (1, 3))
    assert rep.lhs == rep.rhs == F(1, 1680)
    rep = alpha_decomposition_check(9, unit, 3, (1, 4, 7))
    assert rep.lhs == rep.rhs == F(11, 113400)
    rep = beta_decomposition_check(9, unit, 3, (1, 4, 7))
    assert rep.lhs == rep.rhs == F(521, 302400)


def test_decomposition_held_out_table(unit):
    table = extract_c_table(3, n_range=(5, 6, 7))
    assert table.as_ints() == (1, 2)
    rep = alpha_decomposition_check(9, unit, 3, (1, 4, 7), table)
    assert rep.lhs == rep.rhs


def test_decomposition_rejects(unit):
    with pytest.raises(ValueError, match="first position 1"):
        alpha_decomposition_check(7, unit, 2, (2, 4))
    with pytest.raises(ValueError, match="first gap"):
        alpha_decomposition_check(7, unit, 3, (1, 2))
    with pytest.raises(ValueError, match="size at least"):
        alpha_decomposition_check(2, unit, 2, (1,))
