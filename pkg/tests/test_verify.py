from dataclasses import replace

import numpy as np
import pytest

from conftest import diamond
from meadowenum.build import build_meadow, enumerate_premeadows, with_unique_homs
from meadowenum.errors import NotCommon
from meadowenum.lattices import chain
from meadowenum.rings import cyclic_ring, zero_ring
from meadowenum.verify import (
    check_common_axioms,
    check_premeadow_axioms,
    check_premeadow_with_a,
    compute_Jx,
    construct_inverse,
    is_common_meadow,
    non_common_witness,
    search_inverse,
)

BOTTOM, Z3_VERTEX, Z2_VERTEX, TOP = 0, 1, 2, 3


def over_zero(n):
    return with_unique_homs(chain(2), [zero_ring(), cyclic_ring(n)])


def test_small_meadows_pass():
    for n in (2, 5, 6):
        M = build_meadow(over_zero(n))
        assert check_premeadow_axioms(M).passed
        assert check_premeadow_with_a(M).passed


def test_mutated_addition_is_caught(twelve_element_meadow):
    M = build_meadow(twelve_element_meadow)
    add = np.array(M.add)
    add[7, 8] = 11  # 1 + 2 in Z6 now 5, and not symmetric
    report = check_premeadow_axioms(replace(M, add=add))
    assert not report.passed
    assert {"P1", "P2"} & set(report.failed_axioms)
    axiom, witness = report.violations[0]
    assert all(0 <= w < M.size for w in witness)


def test_two_singleton_fibers_flag_a_unique():
    # zero rings on both the bottom and a second vertex; built without the usual guard
    from meadowenum.build import DirectedLatticeOfRings

    dl = DirectedLatticeOfRings(chain(3), (zero_ring(), zero_ring(), cyclic_ring(2)),
                                (((1, 0), (0,)), ((2, 1), (0, 0))))
    M = build_meadow(dl)
    report = check_premeadow_with_a(M)
    assert report.failed_axioms == ["A-unique"]


def test_absorbing_element_is_checked():
    M = build_meadow(over_zero(3))
    add = np.array(M.add)
    add[1, 0] = add[0, 1] = 1
    assert check_premeadow_with_a(replace(M, add=add)).failed_axioms == ["A-absorb"]


@pytest.mark.parametrize("x,members", [
    (0, {BOTTOM}),
    (1, {TOP, Z3_VERTEX, Z2_VERTEX, BOTTOM}),
    (2, {Z3_VERTEX, BOTTOM}),
    (3, {Z2_VERTEX, BOTTOM}),
    (4, {Z3_VERTEX, BOTTOM}),
    (5, {TOP, Z3_VERTEX, Z2_VERTEX, BOTTOM}),
])
def test_j_sets_of_the_twelve_element_meadow(twelve_element_meadow, x, members):
    J = compute_Jx(twelve_element_meadow, TOP, x)
    # the listed sets name only the maximal member and the bottom
    assert J.members == members
    assert len(J.maximal) == 1
    expected_max = max(members, key=lambda v: twelve_element_meadow.lattice.heights[v])
    assert J.unique_max == expected_max


def test_j_set_contains_bottom_and_units_are_their_own_max():
    for dl in enumerate_premeadows(7):
        for i, R in enumerate(dl.rings):
            for x in range(R.order):
                J = compute_Jx(dl, i, x)
                assert dl.lattice.bottom in J.members
                if x in R.units:
                    assert J.maximal == (i,)


def test_common_detection(twelve_element_meadow, non_common_diamond, order_41):
    assert is_common_meadow(twelve_element_meadow)
    assert not is_common_meadow(non_common_diamond)
    J = compute_Jx(non_common_diamond, TOP, 2)  # the element (1, 0)
    assert J.maximal == (1, 2)
    assert non_common_witness(non_common_diamond) is not None
    assert not is_common_meadow(order_41)
    # (0, 1, 1) in Z2 x Z3 x Z5 has index (0 * 3 + 1) * 5 + 1 = 6
    J = compute_Jx(order_41, 4, 6)
    assert J.maximal == (2, 3)


def test_chains_are_common():
    dl = with_unique_homs(chain(4), [zero_ring(), cyclic_ring(2), cyclic_ring(4), cyclic_ring(8)])
    assert is_common_meadow(dl)


def test_inverses():
    dl = over_zero(5)
    M = build_meadow(dl)
    inv = construct_inverse(dl, M)
    assert inv[M.element(1, 2)] == M.element(1, 3)
    assert inv[M.zero] == M.a_elem
    assert check_common_axioms(M, inv).passed


def test_inverse_moves_down_to_the_j_set_top(twelve_element_meadow):
    M = build_meadow(twelve_element_meadow)
    inv = construct_inverse(twelve_element_meadow, M)
    assert inv[M.element(TOP, 2)] == M.element(Z3_VERTEX, 2)
    assert inv[M.element(TOP, 0)] == M.a_elem
    assert inv[M.a_elem] == M.a_elem
    assert check_common_axioms(M, inv).passed


def test_non_common_has_no_inverse(non_common_diamond):
    M = build_meadow(non_common_diamond)
    with pytest.raises(NotCommon):
        construct_inverse(non_common_diamond, M)
    assert search_inverse(M) is None


def test_a_wrong_inverse_is_caught(twelve_element_meadow):
    M = build_meadow(twelve_element_meadow)
    inv = construct_inverse(twelve_element_meadow, M).copy()
    inv[M.zero] = M.zero
    assert "M4" in check_common_axioms(M, inv).failed_axioms


def test_fiber_ones_invert_to_themselves():
    for n in (5, 7, 9):
        for dl in enumerate_premeadows(n):
            if not is_common_meadow(dl):
                continue
            M = build_meadow(dl)
            inv = construct_inverse(dl, M)
            ones = M.add[M.one, M.mul[M.zero]]
            assert np.array_equal(inv[ones], ones)


def test_search_finds_the_constructed_inverse_when_unique():
    dl = over_zero(7)
    M = build_meadow(dl)
    assert np.array_equal(search_inverse(M), construct_inverse(dl, M))


def test_rings_with_a_only_when_one_fiber():
    # orders whose partitions cannot mix coprime parts are single-fiber
    for n in (3, 4, 6, 8):
        for dl in enumerate_premeadows(n):
            M = build_meadow(dl)
            others = [x for x in range(M.size) if x != M.a_elem]
            assert all(M.mul[M.zero, x] == M.zero for x in others)


def test_report_json():
    M = build_meadow(over_zero(3))
    assert check_premeadow_axioms(M).to_json() == {"passed": True, "violations": []}


def test_j_set_ignores_incomparable_vertices():
    dl = with_unique_homs(diamond(), [zero_ring(), cyclic_ring(3), cyclic_ring(2), cyclic_ring(6)])
    J = compute_Jx(dl, Z3_VERTEX, 1)
    assert J.members == {Z3_VERTEX, BOTTOM}
