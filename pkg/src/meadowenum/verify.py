"""Axiom checks on flattened tables, J-sets, and the inverse of a common meadow.

Every check here works on the raw ``add``/``mul`` tables of a MeadowTable and
never consults the directed lattice it came from, so it can judge tables
handed in from outside (a file, a mutated copy) just as well.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .build import DirectedLatticeOfRings, MeadowTable
from .errors import NotCommon
from .rings import is_unit

PREMEADOW_AXIOMS = tuple(f"P{k}" for k in range(1, 11))
COMMON_AXIOMS = ("M1", "M2", "M3", "M4")


@dataclass
class AxiomReport:
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, axiom: str, witness) -> None:
        self.violations.append((axiom, tuple(int(w) for w in witness)))

    @property
    def failed_axioms(self) -> list[str]:
        return [a for a, _ in self.violations]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
        }


def _first(mask) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if hits.size else None


def check_premeadow_axioms(M: MeadowTable) -> AxiomReport:
    """P1 to P10 over all elements; at most one witness per failing axiom."""
    add, mul, neg = np.asarray(M.add), np.asarray(M.mul), np.asarray(M.neg)
    n = M.size
    xs = np.arange(n)
    zero, one = M.zero, M.one
    zx = mul[zero]  # 0*x for every x
    rep = AxiomReport()
    checks = [
        ("P1", lambda: kernels.first_nonassoc(add)),
        ("P2", lambda: kernels.first_noncommut(add)),
        ("P3", lambda: _first(add[:, zero] != xs)),
        ("P4", lambda: _first(add[xs, neg] != zx)),
        ("P5", lambda: kernels.first_nonassoc(mul)),
        ("P6", lambda: kernels.first_noncommut(mul)),
        ("P7", lambda: _first(mul[one] != xs)),
        ("P8", lambda: kernels.first_nondistrib(add, mul)),
        ("P9", lambda: _first(neg[neg] != xs)),
        ("P10", lambda: _first(zx[add] != add[zx[:, None], zx[None, :]])),
    ]
    for name, check in checks:
        w = check()
        if w is not None:
            rep.fail(name, w)
    return rep


def check_premeadow_with_a(M: MeadowTable) -> AxiomReport:
    """A unique singleton fiber of x -> 0*x whose element absorbs addition."""
    add, mul = np.asarray(M.add), np.asarray(M.mul)
    rep = AxiomReport()
    sizes = Counter(int(z) for z in mul[M.zero])
    singles = sorted(z for z, c in sizes.items() if c == 1)
    if len(singles) != 1:
        rep.fail("A-unique", singles)
        return rep
    a = singles[0]
    w = _first(add[:, a] != a)
    if w is not None:
        rep.fail("A-absorb", (w[0], a))
    return rep


# -- J-sets and the common-meadow condition ---------------------------------------

@dataclass(frozen=True)
class JSet:
    vertex: int
    element: int
    members: frozenset[int]
    maximal: tuple[int, ...]

    @property
    def unique_max(self) -> int | None:
        return self.maximal[0] if len(self.maximal) == 1 else None


def compute_Jx(dl: DirectedLatticeOfRings, i: int, x: int) -> JSet:
    """Vertices j <= i where the image of x (an element of the ring at i) is a unit."""
    L = dl.lattice
    members = frozenset(
        j for j in range(L.size)
        if L.leq[j, i] and is_unit(dl.rings[j], dl.transition(j, i)[x]))
    maximal = tuple(sorted(
        j for j in members if not any(k != j and L.leq[j, k] for k in members)))
    return JSet(i, x, members, maximal)


def all_Jsets(dl: DirectedLatticeOfRings):
    for i, R in enumerate(dl.rings):
        for x in range(R.order):
            yield compute_Jx(dl, i, x)


def non_common_witness(dl: DirectedLatticeOfRings) -> JSet | None:
    """The first J-set with several maximal members, if any."""
    for J in all_Jsets(dl):
        if len(J.maximal) != 1:
            return J
    return None


def is_common_meadow(dl: DirectedLatticeOfRings) -> bool:
    if dl.lattice.is_chain:
        return True
    return non_common_witness(dl) is None


def construct_inverse(dl: DirectedLatticeOfRings, M: MeadowTable) -> np.ndarray:
    """x^-1 = inverse of the image of x in the ring at the top of its J-set."""
    inv = np.empty(M.size, dtype=np.intc)
    for g, (i, x) in enumerate(M.elements):
        J = compute_Jx(dl, i, x)
        if len(J.maximal) != 1:
            raise NotCommon(f"J-set of element {x} at vertex {i} has maximal members {J.maximal}")
        j = J.maximal[0]
        R = dl.rings[j]
        y = dl.transition(j, i)[x]
        inv[g] = M.element(j, int(np.flatnonzero(R.mul[y] == R.one)[0]))
    return inv


def _fiber_ones(M: MeadowTable) -> np.ndarray:
    """1 + 0*x for every x."""
    return np.asarray(M.add)[M.one, np.asarray(M.mul)[M.zero]]


def check_common_axioms(M: MeadowTable, inv) -> AxiomReport:
    mul = np.asarray(M.mul)
    inv = np.asarray(inv)
    xs = np.arange(M.size)
    ones = _fiber_ones(M)
    rep = AxiomReport()
    w = _first(mul[xs, inv] != ones[inv])
    if w is not None:
        rep.fail("M1", w)
    w = _first(inv[mul] != mul[inv[:, None], inv[None, :]])
    if w is not None:
        rep.fail("M2", w)
    w = _first(inv[ones] != ones)
    if w is not None:
        rep.fail("M3", w)
    if inv[M.zero] != M.a_elem:
        rep.fail("M4", (M.zero,))
    return rep


def search_inverse(M: MeadowTable) -> np.ndarray | None:
    """Exhaustive search for any inverse table satisfying M1 to M4.

    M4 and M3 pin the inverse of 0 and of every fiber one; M1 restricts each
    other element to the y with x*y = 1 + 0*y. M2 is enforced by backtracking.
    """
    mul = np.asarray(M.mul)
    n = M.size
    ones = _fiber_ones(M)
    cands: list[list[int]] = []
    for x in range(n):
        c = [y for y in range(n) if mul[x, y] == ones[y]]
        if x == M.zero:
            c = [y for y in c if y == M.a_elem]
        if x in set(ones.tolist()):
            c = [y for y in c if y == x]
        if not c:
            return None
        cands.append(c)
    order = sorted(range(n), key=lambda x: len(cands[x]))
    inv = np.full(n, -1, dtype=np.intc)

    def consistent() -> bool:
        known = inv >= 0
        both = known[:, None] & known[None, :] & known[mul]
        lhs = inv[mul]
        rhs = mul[inv[:, None], inv[None, :]]
        return not np.any(both & (lhs != rhs))

    def rec(t: int) -> bool:
        if t == n:
            return True
        x = order[t]
        for y in cands[x]:
            inv[x] = y
            if consistent() and rec(t + 1):
                return True
        inv[x] = -1
        return False

    if not rec(0):
        return None
    return inv if check_common_axioms(M, inv).passed else None
