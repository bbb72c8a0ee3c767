"""Directed lattices of rings and the pre-meadows they define.

A directed lattice of rings puts a ring on every vertex of a finite lattice
(the zero ring at the bottom) and a unital homomorphism on every Hasse cover,
pointing downwards, such that all paths between two vertices compose to the
same map. Flattening one gives a pre-meadow with ``a``: the disjoint union of
the rings, where ``x + y`` and ``x * y`` for ``x`` in the ring at ``i`` and
``y`` in the ring at ``j`` are computed in the ring at ``meet(i, j)`` after
transporting both arguments down.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import AxiomViolation, CapExceeded, CompositionError, DomainError
from .lattices import (
    Lattice,
    enumerate_lattices,
    lattice_automorphisms,
    lattice_from_covers,
    lattice_isomorphisms,
    make_lattice,
)
from .partitions import AdmissiblePartition, admissible_partitions, prime_support
from .ring_enum import enumerate_rings
from .rings import (
    RingTable,
    UnitalHom,
    cyclic_ring,
    enum_homs,
    make_ring,
    ring_isomorphisms,
    zero_ring,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 13

Edge = tuple[int, int]  # (upper, lower)


@dataclass(frozen=True, eq=False)
class DirectedLatticeOfRings:
    lattice: Lattice
    rings: tuple[RingTable, ...]
    edge_maps: tuple[tuple[Edge, tuple[int, ...]], ...]  # sorted by edge

    def __repr__(self):
        names = ",".join(R.name or str(R.order) for R in self.rings)
        return f"<DirectedLatticeOfRings [{names}] covers={list(self.lattice.covers)}>"

    @cached_property
    def edge_homs(self) -> dict[Edge, UnitalHom]:
        return {
            (u, v): UnitalHom(self.rings[u], self.rings[v], m) for (u, v), m in self.edge_maps
        }

    @property
    def order(self) -> int:
        return sum(R.order for R in self.rings)

    @cached_property
    def transitions(self) -> dict[Edge, tuple[int, ...]]:
        """f_{j,i} for every j <= i, composed along the first path found."""
        L = self.lattice
        f: dict[Edge, tuple[int, ...]] = {}
        for i in L.linear_extension:
            f[(i, i)] = tuple(range(self.rings[i].order))
            for c in L.lower_covers[i]:
                h = self.edge_homs[(i, c)].map
                for j in range(L.size):
                    if L.leq[j, c] and (j, i) not in f:
                        g = f[(j, c)]
                        f[(j, i)] = tuple(g[v] for v in h)
        return f

    def transition(self, j: int, i: int) -> tuple[int, ...]:
        return self.transitions[(j, i)]

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "vertices": [R.to_json() for R in self.rings],
            "edges": [{"from": u, "to": v, "map": list(m)} for (u, v), m in self.edge_maps],
        }

    @classmethod
    def from_json(cls, obj) -> "DirectedLatticeOfRings":
        lat = Lattice.from_json(obj["lattice"])
        rings = [RingTable.from_json(r) for r in obj["vertices"]]
        maps = {(e["from"], e["to"]): e["map"] for e in obj["edges"]}
        return make_directed_lattice(lat, rings, maps)


def make_directed_lattice(lattice: Lattice, rings: Sequence[RingTable],
                          edge_maps: Mapping[Edge, Sequence[int]]) -> DirectedLatticeOfRings:
    """Validate the per-vertex and per-edge conditions (not path independence)."""
    if len(rings) != lattice.size:
        raise DomainError("one ring per lattice vertex is required")
    if rings[lattice.bottom].order != 1:
        raise AxiomViolation("bottom-zero-ring", (lattice.bottom,))
    for v, R in enumerate(rings):
        if v != lattice.bottom and R.order < 2:
            raise AxiomViolation("unital-ring", (v,))
    covers = set(lattice.covers)
    if set(edge_maps) != covers:
        raise AxiomViolation("edges-are-covers", tuple(sorted(set(edge_maps) ^ covers))[0])
    for (u, v), m in edge_maps.items():
        bad = UnitalHom(rings[u], rings[v], tuple(int(x) for x in m)).violation()
        if bad:
            raise AxiomViolation(bad[0], (u, v, *bad[1]))
    return DirectedLatticeOfRings(
        lattice, tuple(rings),
        tuple(sorted(((e, tuple(int(x) for x in m)) for e, m in edge_maps.items()))))


def with_unique_homs(lattice: Lattice, rings: Sequence[RingTable],
                     chosen: Mapping[Edge, UnitalHom | Sequence[int]] | None = None
                     ) -> DirectedLatticeOfRings:
    """Label every cover with its only homomorphism unless given in ``chosen``."""
    chosen = dict(chosen or {})
    maps = {}
    for u, v in lattice.covers:
        if (u, v) in chosen:
            h = chosen[(u, v)]
            maps[(u, v)] = h.map if isinstance(h, UnitalHom) else tuple(h)
            continue
        homs = enum_homs(rings[u], rings[v])
        if len(homs) != 1:
            raise DomainError(f"cover {(u, v)} has {len(homs)} homomorphisms; choose one")
        maps[(u, v)] = homs[0].map
    return make_directed_lattice(lattice, rings, maps)


def check_composition(dl: DirectedLatticeOfRings) -> bool:
    """True iff every maximal path between two comparable vertices composes to one map."""
    L = dl.lattice
    homs = {e: h.map for e, h in dl.edge_homs.items()}
    for i in range(L.size):
        # all composites from i down to each j, path by path
        composites: dict[int, set[tuple[int, ...]]] = defaultdict(set)
        stack = [(i, tuple(range(dl.rings[i].order)))]
        while stack:
            v, f = stack.pop()
            composites[v].add(f)
            for c in L.lower_covers[v]:
                h = homs[(v, c)]
                stack.append((c, tuple(h[x] for x in f)))
        if any(len(s) > 1 for s in composites.values()):
            return False
    return True


# -- flattened tables -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MeadowTable:
    size: int
    elements: tuple[tuple[int, int], ...]  # element -> (vertex, local index)
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    zero: int
    one: int
    a_elem: int
    fiber_of: tuple[int, ...]  # element -> vertex; the fiber of 0*x

    def element(self, vertex: int, local: int) -> int:
        return self.offsets[vertex] + local

    @cached_property
    def offsets(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g, (v, x) in enumerate(self.elements):
            if x == 0:
                out[v] = g
        return out

    def zero_times(self, x: int) -> int:
        return int(self.mul[self.zero, x])


def build_meadow(dl: DirectedLatticeOfRings) -> MeadowTable:
    if not check_composition(dl):
        raise CompositionError("edge homomorphisms do not commute")
    L, rings = dl.lattice, dl.rings
    offsets = np.cumsum([0] + [R.order for R in rings])
    n = int(offsets[-1])
    add = np.empty((n, n), dtype=np.intc)
    mul = np.empty((n, n), dtype=np.intc)
    f = {e: np.asarray(m, dtype=np.intc) for e, m in dl.transitions.items()}
    for i, j in itertools.product(range(L.size), repeat=2):
        k = int(L.meet[i, j])
        fi, fj, Rk = f[(k, i)], f[(k, j)], rings[k]
        bi = slice(offsets[i], offsets[i + 1])
        bj = slice(offsets[j], offsets[j + 1])
        add[bi, bj] = offsets[k] + Rk.add[fi[:, None], fj[None, :]]
        mul[bi, bj] = offsets[k] + Rk.mul[fi[:, None], fj[None, :]]
    elements = tuple((v, x) for v, R in enumerate(rings) for x in range(R.order))
    neg = np.array([offsets[v] + rings[v].neg[x] for v, x in elements], dtype=np.intc)
    for arr in (add, mul, neg):
        arr.setflags(write=False)
    top = L.top
    return MeadowTable(
        size=n,
        elements=elements,
        add=add,
        mul=mul,
        neg=neg,
        zero=int(offsets[top] + rings[top].zero),
        one=int(offsets[top] + rings[top].one),
        a_elem=int(offsets[L.bottom]),
        fiber_of=tuple(v for v, _ in elements),
    )


@dataclass(frozen=True)
class AssociatedPartition:
    parts: tuple[int, ...]  # non-bottom fiber sizes, weakly decreasing

    def with_one(self) -> list[int]:
        return [*self.parts, 1]

    @property
    def n(self) -> int:
        return sum(self.parts) + 1

    def __str__(self):
        return f"{self.n}=" + "+".join(map(str, self.with_one()))


def associated_partition(M: MeadowTable) -> AssociatedPartition:
    """Fiber sizes read off the tables through x -> 0*x."""
    fibers: dict[int, int] = defaultdict(int)
    for x in range(M.size):
        fibers[int(M.mul[M.zero, x])] += 1
    sizes = sorted(fibers.values(), reverse=True)
    if sizes.count(1) != 1:
        raise AxiomViolation("A-unique", tuple(z for z, c in fibers.items() if c == 1))
    sizes.remove(1)
    return AssociatedPartition(tuple(sizes))


def extract_directed_lattice(M: MeadowTable) -> DirectedLatticeOfRings:
    """Recover the directed lattice over 0*M with transition maps x -> x + z."""
    from .verify import check_premeadow_axioms, check_premeadow_with_a

    for report in (check_premeadow_axioms(M), check_premeadow_with_a(M)):
        if not report.passed:
            axiom, witness = report.violations[0]
            raise AxiomViolation(axiom, witness)
    zero_row = M.mul[M.zero]
    Z = sorted(set(int(z) for z in zero_row))
    vid = {z: i for i, z in enumerate(Z)}
    meet = [[vid[int(M.mul[z, w])] for w in Z] for z in Z]
    lattice = make_lattice(meet)
    fibers = [[x for x in range(M.size) if zero_row[x] == z] for z in Z]
    rings = []
    for z, fib in zip(Z, fibers):
        loc = {x: i for i, x in enumerate(fib)}
        a = np.array(fib)
        add = [[loc[int(v)] for v in row] for row in M.add[a[:, None], a[None, :]]]
        mul = [[loc[int(v)] for v in row] for row in M.mul[a[:, None], a[None, :]]]
        one = int(M.add[M.one, z])
        rings.append(make_ring(len(fib), add, mul, loc[z], loc[one]))
    maps = {}
    for u, v in lattice.covers:
        zl = Z[v]
        lower = {x: i for i, x in enumerate(fibers[v])}
        maps[(u, v)] = tuple(lower[int(M.add[x, zl])] for x in fibers[u])
    return make_directed_lattice(lattice, rings, maps)


# -- isomorphism ---------------------------------------------------------------

def _isos(R: RingTable, S: RingTable, cache: dict) -> list[UnitalHom]:
    key = (id(R), id(S))
    if key not in cache:
        cache[key] = ring_isomorphisms(R, S) if R.key == S.key else []
    return cache[key]


def find_meadow_isomorphism(d1: DirectedLatticeOfRings, d2: DirectedLatticeOfRings,
                            _cache: dict | None = None):
    """(phi, psi) with psi[v] a ring iso rings1[v] -> rings2[phi[v]] commuting on covers."""
    cache = {} if _cache is None else _cache
    L1, L2 = d1.lattice, d2.lattice
    if L1.size != L2.size or d1.order != d2.order:
        return None
    top_down = list(reversed(L1.linear_extension))
    for phi in lattice_isomorphisms(L1, L2):
        if any(d1.rings[v].key != d2.rings[phi[v]].key for v in range(L1.size)):
            continue
        cands = [_isos(d1.rings[v], d2.rings[phi[v]], cache) for v in range(L1.size)]
        psi: dict[int, tuple[int, ...]] = {}

        def fits(v: int, g: tuple[int, ...]) -> bool:
            for u in L1.upper_covers[v]:
                h1 = d1.edge_homs[(u, v)].map
                h2 = d2.edge_homs[(phi[u], phi[v])].map
                pu = psi[u]
                if any(g[h1[x]] != h2[pu[x]] for x in range(len(h1))):
                    return False
            return True

        def rec(t: int) -> bool:
            if t == len(top_down):
                return True
            v = top_down[t]
            for h in cands[v]:
                if fits(v, h.map):
                    psi[v] = h.map
                    if rec(t + 1):
                        return True
            psi.pop(v, None)
            return False

        if rec(0):
            return tuple(phi), dict(psi)
    return None


def meadow_isomorphic(d1: DirectedLatticeOfRings, d2: DirectedLatticeOfRings) -> bool:
    return find_meadow_isomorphism(d1, d2) is not None


def _signature(dl: DirectedLatticeOfRings) -> tuple:
    """Cheap isomorphism invariant used to bucket candidates before exact checks."""
    L = dl.lattice
    labels = []
    for v in range(L.size):
        down = sorted((dl.edge_homs[(v, c)].kernel_size, dl.rings[c].key) for c in L.lower_covers[v])
        labels.append((dl.rings[v].key, tuple(down)))
    best = min(tuple(labels[s.index(p)] for p in range(L.size)) for s in lattice_automorphisms(L))
    return (L.key, best)


# -- the pipeline ----------------------------------------------------------------

@dataclass(frozen=True)
class Assignment:
    lattice: Lattice
    rings: tuple[RingTable, ...]


CatalogLookup = Callable[[int], Sequence[RingTable]]


def _lookup(catalogs) -> CatalogLookup:
    if catalogs is None:
        return lambda order: enumerate_rings(order).classes
    if callable(catalogs):
        return catalogs
    return lambda order: catalogs[order]


def _distinct_arrangements(parts: Sequence[int]):
    return sorted(set(itertools.permutations(parts)))


def assign_rings(L: Lattice, p: AdmissiblePartition | Sequence[int], catalogs=None,
                 prune: bool = False) -> list[Assignment]:
    """Ways to place rings of the part orders on the non-bottom vertices, up to Aut(L).

    With ``prune`` the placements where some cover ``u > v`` (v not bottom) has
    a prime dividing ``|R_v|`` but not ``|R_u|`` are dropped, since no unital
    homomorphism can exist along that cover.
    """
    parts = tuple(p.parts if isinstance(p, AdmissiblePartition) else p)
    slots = [v for v in range(L.size) if v != L.bottom]
    if len(slots) != len(parts):
        raise DomainError(
            f"lattice has {len(slots)} non-bottom vertices but the partition has {len(parts)} parts")
    lookup = _lookup(catalogs)
    auts = lattice_automorphisms(L)
    zr = zero_ring()
    out = []
    for arrangement in _distinct_arrangements(parts):
        orders = [1] * L.size
        for v, a in zip(slots, arrangement):
            orders[v] = a
        if prune and any(v != L.bottom and not prime_support(orders[v]) <= prime_support(orders[u])
                         for u, v in L.covers):
            continue
        pools = [lookup(orders[v]) if v != L.bottom else (zr,) for v in range(L.size)]
        for picks in itertools.product(*[range(len(pl)) for pl in pools]):
            label = tuple(zip(orders, picks))
            if any(tuple(label[s.index(q)] for q in range(L.size)) < label for s in auts[1:]):
                continue
            out.append(Assignment(L, tuple(pools[v][picks[v]] for v in range(L.size))))
    return out


def enumerate_labelings(assignment: Assignment, _homs: dict | None = None
                        ) -> list[DirectedLatticeOfRings]:
    """Every commuting choice of cover homomorphisms, built bottom-up."""
    L, rings = assignment.lattice, assignment.rings
    cache = {} if _homs is None else _homs

    def homs(u: int, v: int) -> list[tuple[int, ...]]:
        key = (id(rings[u]), id(rings[v]))
        if key not in cache:
            cache[key] = [h.map for h in enum_homs(rings[u], rings[v])]
        return cache[key]

    order = [v for v in L.linear_extension if v != L.bottom]
    f: dict[Edge, tuple[int, ...]] = {(L.bottom, L.bottom): (0,)}
    chosen: dict[Edge, tuple[int, ...]] = {}
    results = []

    def rec(t: int):
        if t == len(order):
            results.append(DirectedLatticeOfRings(L, rings, tuple(sorted(chosen.items()))))
            return
        i = order[t]
        low = L.lower_covers[i]
        options = [homs(i, c) for c in low]
        for pick in itertools.product(*options):
            ok = True
            for a, b in itertools.combinations(range(len(low)), 2):
                m = int(L.meet[low[a], low[b]])
                fa, fb = f[(m, low[a])], f[(m, low[b])]
                ha, hb = pick[a], pick[b]
                if any(fa[ha[x]] != fb[hb[x]] for x in range(rings[i].order)):
                    ok = False
                    break
            if not ok:
                continue
            added = [(i, i)]
            f[(i, i)] = tuple(range(rings[i].order))
            for c, h in zip(low, pick):
                chosen[(i, c)] = h
                for j in range(L.size):
                    if L.leq[j, c] and (j, i) not in f:
                        g = f[(j, c)]
                        f[(j, i)] = tuple(g[x] for x in h)
                        added.append((j, i))
            rec(t + 1)
            for e in added:
                del f[e]
            for c in low:
                del chosen[(i, c)]

    if L.size == 1:
        return [DirectedLatticeOfRings(L, rings, ())]
    rec(0)
    return results


def _dedup(candidates: list[DirectedLatticeOfRings]) -> list[DirectedLatticeOfRings]:
    buckets: dict[tuple, list[DirectedLatticeOfRings]] = defaultdict(list)
    kept = []
    cache: dict = {}
    for dl in candidates:
        sig = _signature(dl)
        if any(find_meadow_isomorphism(dl, other, cache) for other in buckets[sig]):
            continue
        buckets[sig].append(dl)
        kept.append(dl)
    return kept


def _unit(args):
    """One (partition, lattice) work unit; returns catalog positions and edge maps."""
    parts, size, lattice_index, catalog_cap = args
    L = enumerate_lattices(size, cap=max(size, 1))[lattice_index]
    lookup = _lookup(None)
    found = []
    hom_cache: dict = {}
    for asg in assign_rings(L, parts, lookup, prune=True):
        found.extend(enumerate_labelings(asg, hom_cache))
    out = []
    for dl in _dedup(found):
        pos = tuple((R.order, -1 if v == L.bottom else lookup(R.order).index(R))
                    for v, R in enumerate(dl.rings))
        out.append((pos, dl.edge_maps))
    return out


def enumerate_premeadows(n: int, cap: int = DEFAULT_CAP, jobs: int = 1,
                         lattice_cap: int | None = None) -> list[DirectedLatticeOfRings]:
    """All pre-meadows with a of order n up to isomorphism, as directed lattices of rings.

    Isomorphic structures share their partition and their lattice, so each
    (partition, lattice) unit is deduplicated on its own. Units may run in
    worker processes; results are reassembled in unit order.
    """
    if n < 3:
        raise DomainError(f"pre-meadows with a have at least 3 elements, got {n}")
    if n > cap:
        raise CapExceeded(f"pre-meadow enumeration is capped at order {cap}, got {n}")
    units = []
    for p in admissible_partitions(n):
        size = len(p.parts) + 1
        if lattice_cap is not None and size > lattice_cap:
            raise CapExceeded(f"partition {p} needs lattices of size {size} > {lattice_cap}")
        for idx in range(len(enumerate_lattices(size, cap=size))):
            units.append((p.parts, size, idx, cap))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = list(pool.map(_unit, units))
    else:
        raw = [_unit(u) for u in units]
    lookup = _lookup(None)
    zr = zero_ring()
    out = []
    for (parts, size, idx, _), found in zip(units, raw):
        L = enumerate_lattices(size, cap=size)[idx]
        for pos, maps in found:
            rings = tuple(zr if k < 0 else lookup(order)[k] for order, k in pos)
            out.append(DirectedLatticeOfRings(L, rings, maps))
    log.info("order %d: %d pre-meadows with a", n, len(out))
    return out


# -- lower bounds ---------------------------------------------------------------

def lower_bound_witnesses(order: int) -> list[DirectedLatticeOfRings]:
    """Pairwise non-isomorphic common meadows from the lattice-counting constructions.

    Odd ``2m+1``: every lattice with ``m+1`` elements, Z2 everywhere above the
    bottom, identity maps. Even ``2m``: a lattice K with ``m-5`` elements
    carrying Z2, wrapped as Z6 > {Z3, K} > {a} with the two projections.
    """
    z2, z3, z6, zr = cyclic_ring(2), cyclic_ring(3), cyclic_ring(6), zero_ring()
    out = []
    if order % 2 == 1 and order >= 5:
        m = (order - 1) // 2
        for L in enumerate_lattices(m + 1, cap=m + 1):
            rings = [zr if v == L.bottom else z2 for v in range(L.size)]
            out.append(with_unique_homs(L, rings))
        return out
    if order % 2 == 0 and order >= 12:
        m = order // 2
        for K in enumerate_lattices(m - 5, cap=max(m - 5, 1)):
            k = K.size
            v1, v2, v3 = k, k + 1, k + 2
            covers = list(K.covers) + [(v1, K.top), (v1, v2), (v2, v3), (K.bottom, v3)]
            L = lattice_from_covers(k + 3, covers)
            rings = [z2] * k + [z6, z3, zr]
            out.append(with_unique_homs(L, rings))
        return out
    raise DomainError(f"lower-bound witnesses need an odd order >= 5 or an even order >= 12, got {order}")
