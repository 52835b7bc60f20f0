"""Enumeration, filtering, and the aggregated weight profiles."""

import itertools
import math

import pytest

from staircase_tableaux import (
    Symbol,
    Tableau,
    count_tableaux,
    enumerate_all,
    enumerate_filtered,
    materialize,
    weight_profile,
)
from staircase_tableaux import enumeration as en
from staircase_tableaux._kernels import diagonal_joint_profile_arr, weight_profile_arr
from staircase_tableaux.tableau import boxes

A, B = Symbol.ALPHA, Symbol.BETA


def reference_valid(n, cells):
    """Independent validity check, written straight from the rules."""
    for j in range(1, n + 1):
        if (n + 1 - j, j) not in cells:
            return False
    for (i, j), s in cells.items():
        if s is A:
            if any((r, j) in cells for r in range(1, i)):
                return False
        else:
            if any((i, c) in cells for c in range(1, j)):
                return False
    return True


def test_counts_match_closed_form():
    for n in range(1, 7):
        assert count_tableaux(n) == math.factorial(n + 1)


def test_enumeration_matches_brute_force():
    """The pruned walk agrees with filtering every raw box assignment."""
    for n in range(1, 5):
        bx = list(boxes(n))
        expected = set()
        for combo in itertools.product((A, B, None), repeat=len(bx)):
            cells = {b: s for b, s in zip(bx, combo) if s is not None}
            if reference_valid(n, cells):
                expected.add(Tableau(n, cells))
        got = list(enumerate_all(n))
        assert len(got) == len(expected)
        assert set(got) == expected


def test_enumeration_order_deterministic():
    first = list(enumerate_all(3))
    second = list(enumerate_all(3))
    assert first == second


def test_enumeration_order_n2():
    expected = [
        Tableau(2, {(1, 1): A, (1, 2): A, (2, 1): B}),
        Tableau(2, {(1, 1): B, (1, 2): A, (2, 1): B}),
        Tableau(2, {(1, 2): A, (2, 1): A}),
        Tableau(2, {(1, 2): B, (2, 1): A}),
        Tableau(2, {(1, 2): A, (2, 1): B}),
        Tableau(2, {(1, 2): B, (2, 1): B}),
    ]
    assert list(enumerate_all(2)) == expected


def test_enumerate_all_range_checks():
    with pytest.raises(ValueError):
        list(enumerate_all(0))
    with pytest.raises(ValueError):
        list(enumerate_all(11))
    with pytest.raises(ValueError):
        materialize(9)
    with pytest.raises(ValueError):
        count_tableaux(11)


def test_filtered_single_event():
    got = list(enumerate_filtered(2, [en.make_event(1, 1, A)]))
    assert len(got) == 2
    for t in got:
        assert t.get(2, 1) is A


def test_filtered_contradictory_pair():
    # an Alpha on diagonal 2 above an Alpha on the first diagonal of its column
    events = [en.make_event(2, 1, A), en.make_event(1, 1, A)]
    assert list(enumerate_filtered(2, events)) == []


def test_filtered_rejects_conflicting_events():
    with pytest.raises(ValueError, match="contradictory"):
        list(enumerate_filtered(2, [en.make_event(1, 1, A), en.make_event(1, 1, B)]))


def test_filtered_rejects_empty_first_diagonal():
    with pytest.raises(ValueError, match="required empty"):
        list(enumerate_filtered(2, [en.make_event(1, 1, None)]))


def test_filtered_partitions_by_content():
    for n in (2, 3, 4):
        whole = set(enumerate_all(n))
        parts = [
            set(enumerate_filtered(n, [en.make_event(2, 1, s)])) for s in (A, B, None)
        ]
        assert parts[0] | parts[1] | parts[2] == whole
        assert not (parts[0] & parts[1] or parts[0] & parts[2] or parts[1] & parts[2])


def test_filtered_any_event():
    either = set(enumerate_filtered(3, [en.make_event(2, 1, en.ANY_SYMBOL)]))
    assert either == set(enumerate_filtered(3, [en.make_event(2, 1, A)])) | set(
        enumerate_filtered(3, [en.make_event(2, 1, B)])
    )


def test_make_event():
    assert en.make_event(2, 1, A) == (2, 1, en.ALPHA)
    assert en.make_event(2, 1, B) == (2, 1, en.BETA)
    assert en.make_event(2, 1, None) == (2, 1, en.EMPTY)
    assert en.make_event(2, 1, en.ANY_SYMBOL) == (2, 1, en.ANY)
    ev = en.make_event(2, 1, A)
    assert en.make_event(*ev) == ev
    with pytest.raises(ValueError):
        en.make_event(2, 1, "a")
    with pytest.raises(ValueError):
        en.make_event(2, 1, True)
    with pytest.raises(ValueError):
        en.make_event(2, 1, 7)


def test_events_to_required():
    req = en.events_to_required(3, [en.make_event(2, 1, A), en.make_event(1, 1, B)])
    assert req == {(2, 1): en.ALPHA, (3, 1): en.BETA}
    # repeating an event is harmless
    repeated = [en.make_event(2, 1, A)] * 2
    assert en.events_to_required(3, repeated) == {(2, 1): en.ALPHA}


def test_count_symbols():
    for t in materialize(3):
        assert en.count_symbols(t) == t.symbol_counts()


def test_weight_profile_n2():
    assert weight_profile(2) == {(0, 1): 1, (1, 0): 1, (0, 2): 1, (1, 1): 2, (2, 0): 1}


def test_weight_profile_matches_enumeration():
    for n in (3, 4):
        direct = {}
        for t in enumerate_all(n):
            na, nb = t.symbol_counts()
            key = (n - na, n - nb)
            direct[key] = direct.get(key, 0) + 1
        assert weight_profile(n) == direct


def test_weight_profile_filtered():
    events = frozenset({en.make_event(2, 1, A)})
    direct = {}
    for t in enumerate_filtered(4, [en.make_event(2, 1, A)]):
        na, nb = t.symbol_counts()
        key = (4 - na, 4 - nb)
        direct[key] = direct.get(key, 0) + 1
    assert weight_profile(4, events) == direct


def test_diagonal_joint_profile_n2():
    assert en.diagonal_joint_profile(2, 2) == {
        (0, 0, 0, 2): 1,
        (0, 0, 1, 1): 2,
        (0, 0, 2, 0): 1,
        (0, 1, 1, 0): 1,
        (1, 0, 0, 1): 1,
    }


def test_diagonal_joint_profile_marginalizes():
    for n in (3, 4, 5):
        for k in range(1, n + 1):
            collapsed = {}
            for (ca, cb, da, db), cnt in en.diagonal_joint_profile(n, k).items():
                collapsed[(da, db)] = collapsed.get((da, db), 0) + cnt
            assert collapsed == weight_profile(n)


def test_numba_kernels_match_python():
    for n in (5, 6):
        arr = weight_profile_arr(n, [-1] * (n * (n + 1) // 2))
        span = n + 1
        rebuilt = {
            (i, j): int(arr[i * span + j])
            for i in range(span)
            for j in range(span)
            if arr[i * span + j]
        }
        assert rebuilt == weight_profile(n)
    for n, k in ((5, 2), (6, 3)):
        arr = diagonal_joint_profile_arr(n, k)
        width = n - k + 2
        span = n + 1
        rebuilt = {}
        for ca in range(width):
            for cb in range(width):
                for da in range(span):
                    for db in range(span):
                        v = arr[((ca * width + cb) * span + da) * span + db]
                        if v:
                            rebuilt[(ca, cb, da, db)] = int(v)
        assert rebuilt == en.diagonal_joint_profile(n, k)


def test_box_content_profile():
    prof = en.box_content_profile(2)
    assert prof[((1, 1), en.ALPHA)] == {(0, 1): 1}
    for box in boxes(2):
        total = sum(
            cnt
            for code in (en.ALPHA, en.BETA, en.EMPTY)
            for cnt in prof.get((box, code), {}).values()
        )
        assert total == 6


def test_subtableau_profile_counts():
    prof = en.subtableau_profile(3, 2, 1)
    assert sum(prof.values()) == 24


def test_partition_search_space():
    assert en.partition_search_space(4, 1) == [frozenset()]
    parts = en.partition_search_space(4, 3)
    assert len(parts) >= 3
    seen = []
    for events in parts:
        chunk = set(enumerate_filtered(4, events))
        for prior in seen:
            assert not (chunk & prior)
        seen.append(chunk)
    union = set().union(*seen)
    assert union == set(enumerate_all(4))
    assert sum(count_tableaux(4, en.events_to_required(4, ev)) for ev in parts) == 120
