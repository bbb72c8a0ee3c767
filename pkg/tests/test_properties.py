import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from meadowenum.build import (
    DirectedLatticeOfRings,
    build_meadow,
    enumerate_premeadows,
    meadow_isomorphic,
)
from meadowenum.lattices import relabel_lattice
from meadowenum.partitions import prime_support
from meadowenum.ring_enum import enumerate_rings
from meadowenum.rings import (
    canonical_form,
    construct_witness_hom,
    enum_homs,
    is_isomorphic,
    product_ring,
    relabel,
)
from meadowenum.verify import check_premeadow_axioms, check_premeadow_with_a
from oracles import table_isomorphism

ALL_RINGS = [R for n in range(2, 10) for R in enumerate_rings(n)]
STRUCTURES = [dl for n in (5, 7, 9) for dl in enumerate_premeadows(n)]

rings = st.sampled_from(ALL_RINGS)
structures = st.sampled_from(STRUCTURES)


@settings(deadline=None)
@given(rings, rings)
def test_homs_need_nested_prime_supports(S, T):
    if enum_homs(S, T):
        assert prime_support(T.order) <= prime_support(S.order)


@settings(deadline=None)
@given(st.lists(st.sampled_from([2, 3, 5]), min_size=1, max_size=3),
       st.lists(st.sampled_from([2, 3, 5]), min_size=0, max_size=3))
def test_witness_hom_exists_when_supports_nest(src, dst):
    assume(set(dst) <= set(src))
    S, T, h = construct_witness_hom(src, dst)
    assert h.violation() is None
    assert enum_homs(S, T)


@settings(max_examples=40, deadline=None)
@given(rings, st.randoms())
def test_canonical_form_ignores_labels(R, rnd):
    perm = list(range(R.order))
    rnd.shuffle(perm)
    assert canonical_form(relabel(R, perm)) == canonical_form(R)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([R for R in ALL_RINGS if R.order <= 4]),
       st.sampled_from([R for R in ALL_RINGS if R.order <= 3]))
def test_products_commute(R, S):
    assert is_isomorphic(product_ring(R, S), product_ring(S, R)) is not None


def relabeled(dl, rnd):
    """The same structure with shuffled vertex and element names."""
    L = dl.lattice
    perm = list(range(L.size))
    rnd.shuffle(perm)
    L2 = relabel_lattice(L, perm)
    elem_perms = []
    for R in dl.rings:
        p = list(range(R.order))
        rnd.shuffle(p)
        elem_perms.append(p)
    rings = [None] * L.size
    for v, R in enumerate(dl.rings):
        rings[perm[v]] = relabel(R, elem_perms[v])
    maps = []
    for (u, v), m in dl.edge_maps:
        new = [0] * len(m)
        for x, y in enumerate(m):
            new[elem_perms[u][x]] = elem_perms[v][y]
        maps.append(((perm[u], perm[v]), tuple(new)))
    return DirectedLatticeOfRings(L2, tuple(rings), tuple(sorted(maps)))


@settings(max_examples=40, deadline=None)
@given(structures, st.randoms())
def test_isomorphism_ignores_labels(dl, rnd):
    other = relabeled(dl, rnd)
    assert meadow_isomorphic(dl, other)
    assert table_isomorphism(build_meadow(dl), build_meadow(other)) is not None


@settings(max_examples=40, deadline=None)
@given(structures)
def test_flattened_tables_satisfy_the_axioms(dl):
    M = build_meadow(dl)
    assert check_premeadow_axioms(M).passed
    assert check_premeadow_with_a(M).passed
    # x -> 0*x is idempotent and lands on the fiber zeros
    zx = np.asarray(M.mul)[M.zero]
    assert np.array_equal(zx[zx], zx)
