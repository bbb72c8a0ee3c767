"""Finite lattices stored as meet tables, with isomorph-free generation.

A finite lattice minus its top is a finite meet-semilattice, and deleting a
maximal element from a meet-semilattice leaves a meet-semilattice. So every
lattice with ``n`` elements is reached from the single-point semilattice by
adding ``n - 2`` maximal elements one at a time and finally a top. Each level
keeps one canonical representative per isomorphism class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import AxiomViolation, CapExceeded

DEFAULT_CAP = 8


@dataclass(frozen=True, eq=False)
class Lattice:
    size: int
    meet: np.ndarray
    bottom: int
    top: int

    def __repr__(self):
        return f"<Lattice size={self.size} covers={self.covers}>"

    @cached_property
    def leq(self) -> np.ndarray:
        out = self.meet == np.arange(self.size)[:, None]
        out.setflags(write=False)
        return out

    @cached_property
    def join(self) -> np.ndarray:
        j = kernels.meet_from_leq(self.leq.T)
        j.setflags(write=False)
        return j

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return hasse_covers(self).edges

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        low = [[] for _ in range(self.size)]
        for u, v in self.covers:
            low[u].append(v)
        return tuple(tuple(x) for x in low)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        up = [[] for _ in range(self.size)]
        for u, v in self.covers:
            up[v].append(u)
        return tuple(tuple(x) for x in up)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return _heights(self.leq)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Vertices sorted bottom-up."""
        return tuple(sorted(range(self.size), key=lambda v: (self.heights[v], v)))

    @cached_property
    def is_chain(self) -> bool:
        return all(len(c) <= 1 for c in self.lower_covers)

    @cached_property
    def _canon(self):
        return _canonical_search(self.leq)

    @property
    def key(self) -> bytes:
        return self._canon[0]

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def to_json(self) -> dict:
        return {"size": self.size, "meet": self.meet.tolist()}

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        lat = make_lattice(obj["meet"])
        if lat.size != obj.get("size", lat.size):
            raise AxiomViolation("size", (lat.size,))
        return lat


@dataclass(frozen=True)
class HasseCover:
    edges: tuple[tuple[int, int], ...]  # (upper, lower)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


def _heights(leq: np.ndarray) -> tuple[int, ...]:
    n = leq.shape[0]
    order = sorted(range(n), key=lambda v: int(leq[:, v].sum()))
    h = [0] * n
    for v in order:
        below = [u for u in range(n) if u != v and leq[u, v]]
        h[v] = 1 + max((h[u] for u in below), default=-1)
    return tuple(h)


def _check_partial_order(leq: np.ndarray):
    n = leq.shape[0]
    if not np.all(np.diagonal(leq)):
        raise AxiomViolation("reflexive", (int(np.flatnonzero(~np.diagonal(leq))[0]),))
    anti = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if anti.size:
        raise AxiomViolation("antisymmetric", tuple(anti[0]))
    trans = np.argwhere((leq.astype(int) @ leq.astype(int) > 0) & ~leq)
    if trans.size:
        raise AxiomViolation("transitive", tuple(trans[0]))


def is_lattice(leq) -> bool:
    """True iff the partial order has all binary meets and joins."""
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] == 0:
        return False
    try:
        _check_partial_order(leq)
    except AxiomViolation:
        return False
    return kernels.meet_from_leq(leq) is not None and kernels.meet_from_leq(leq.T) is not None


def lattice_from_leq(leq) -> Lattice:
    leq = np.asarray(leq, dtype=bool)
    _check_partial_order(leq)
    meet = kernels.meet_from_leq(leq)
    if meet is None or kernels.meet_from_leq(leq.T) is None:
        raise AxiomViolation("lattice", ())
    return _from_meet(meet)


def _from_meet(meet) -> Lattice:
    meet = np.ascontiguousarray(meet, dtype=np.intc)
    meet.setflags(write=False)
    n = meet.shape[0]
    leq = meet == np.arange(n)[:, None]
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    return Lattice(n, meet, bottom, top)


def make_lattice(meet) -> Lattice:
    """Validate a meet table: idempotent, commutative, associative, and a lattice order."""
    m = np.ascontiguousarray(meet, dtype=np.intc)
    n = m.shape[0]
    if m.ndim != 2 or m.shape != (n, n) or n == 0:
        raise AxiomViolation("shape", ())
    if np.any((m < 0) | (m >= n)):
        raise AxiomViolation("range", tuple(np.argwhere((m < 0) | (m >= n))[0]))
    bad = np.flatnonzero(np.diagonal(m) != np.arange(n))
    if bad.size:
        raise AxiomViolation("idempotent", (int(bad[0]),))
    w = kernels.first_noncommut(m)
    if w:
        raise AxiomViolation("commutative", w)
    w = kernels.first_nonassoc(m)
    if w:
        raise AxiomViolation("associative", w)
    leq = m == np.arange(n)[:, None]
    if not leq.all(axis=1).any():
        raise AxiomViolation("bottom", ())
    if kernels.meet_from_leq(leq.T) is None:
        raise AxiomViolation("join", ())
    return _from_meet(m)


def lattice_from_covers(size: int, covers: Iterable[tuple[int, int]]) -> Lattice:
    """Lattice whose order is the reflexive-transitive closure of (upper, lower) pairs."""
    leq = np.eye(size, dtype=bool)
    for u, v in covers:
        leq[v, u] = True
    for k in range(size):  # Warshall
        leq |= leq[:, [k]] & leq[[k], :]
    return lattice_from_leq(leq)


def chain(n: int) -> Lattice:
    return lattice_from_covers(n, [(i + 1, i) for i in range(n - 1)])


def hasse_covers(L: Lattice) -> HasseCover:
    leq = L.leq
    strict = leq & ~np.eye(L.size, dtype=bool)
    # u covers v iff v < u with nothing strictly between
    between = (strict.astype(int) @ strict.astype(int)) > 0
    pairs = np.argwhere(strict & ~between)
    return HasseCover(tuple(sorted((int(u), int(v)) for v, u in pairs)))


# -- canonical labeling ---------------------------------------------------------

def _vertex_classes(leq: np.ndarray) -> list[tuple]:
    n = leq.shape[0]
    h = _heights(leq)
    depth = _heights(leq.T)
    base = [(h[v], -depth[v], int(leq[:, v].sum()), int(leq[v, :].sum())) for v in range(n)]
    strict = leq & ~np.eye(n, dtype=bool)
    between = (strict.astype(int) @ strict.astype(int)) > 0
    cov = strict & ~between
    return [
        (base[v],
         tuple(sorted(base[u] for u in range(n) if cov[u, v])),
         tuple(sorted(base[w] for w in range(n) if cov[v, w])))
        for v in range(n)
    ]


def _canonical_search(leq: np.ndarray):
    """(key, optimal labelings); labeling[p] is the vertex at canonical position p.

    Positions are grouped by an invariant class, and within that constraint the
    key, rows ``[leq[perm[q], perm[p]] for q < p]``, is minimized by
    backtracking. The optimal labelings form one coset of the automorphism group.
    """
    n = leq.shape[0]
    cls = _vertex_classes(leq)
    order = sorted(range(n), key=lambda v: cls[v])
    slot_class = [cls[v] for v in order]
    best: list = [None]
    best_perms: list[tuple[int, ...]] = []
    perm: list[int] = []
    rows: list[tuple[int, ...]] = []
    used = [False] * n

    def rec(p: int):
        if p == n:
            if best[0] is None or rows < best[0]:
                best[0] = list(rows)
                best_perms.clear()
            best_perms.append(tuple(perm))
            return
        for v in range(n):
            if used[v] or cls[v] != slot_class[p]:
                continue
            row = tuple(int(leq[perm[q], v]) for q in range(p))
            if best[0] is not None:
                if row > best[0][p] and rows == best[0][:p]:
                    continue
            used[v] = True
            perm.append(v)
            rows.append(row)
            if best[0] is None or rows <= best[0][: p + 1]:
                rec(p + 1)
            rows.pop()
            perm.pop()
            used[v] = False

    rec(0)
    header = repr(slot_class).encode()
    body = bytes(b for row in best[0] for b in row)
    return bytes([n]) + body + b"|" + header, best_perms


def canonical_lattice(L: Lattice) -> Lattice:
    """Relabel so that vertex ``p`` is the one at canonical position ``p``."""
    perm = np.array(L._canon[1][0])
    inv = np.empty_like(perm)
    inv[perm] = np.arange(L.size)
    meet = inv[L.meet[perm[:, None], perm[None, :]]]
    out = _from_meet(meet)
    out.__dict__["_canon"] = (L.key, [tuple(range(L.size))] + [
        tuple(int(inv[v]) for v in q) for q in L._canon[1][1:]])
    return out


def lattice_automorphisms(L: Lattice) -> list[tuple[int, ...]]:
    """Order-preserving bijections as tuples ``sigma[v]``, identity first."""
    perms = L._canon[1]
    first = perms[0]
    out = set()
    for q in perms:
        sigma = [0] * L.size
        for p in range(L.size):
            sigma[first[p]] = q[p]
        out.add(tuple(sigma))
    ident = tuple(range(L.size))
    return [ident] + sorted(out - {ident})


def lattice_isomorphisms(L1: Lattice, L2: Lattice) -> list[tuple[int, ...]]:
    """All order isomorphisms ``phi`` with ``phi[v1] = v2``."""
    if L1.size != L2.size or L1.key != L2.key:
        return []
    p1 = L1._canon[1][0]
    out = set()
    for q in L2._canon[1]:
        phi = [0] * L1.size
        for p in range(L1.size):
            phi[p1[p]] = q[p]
        out.add(tuple(phi))
    return sorted(out)


# -- generation -------------------------------------------------------------------

def _antichains(leq: np.ndarray):
    n = leq.shape[0]
    for r in range(1, n + 1):
        for combo in itertools.combinations(range(n), r):
            if all(not leq[a, b] and not leq[b, a] for a, b in itertools.combinations(combo, 2)):
                yield combo


def _extend(leq: np.ndarray):
    """Children of a meet-semilattice: add one maximal element over each valid antichain."""
    n = leq.shape[0]
    meet = kernels.meet_from_leq(leq)
    for A in _antichains(leq):
        ok = True
        for t in range(n):
            cands = {int(meet[a, t]) for a in A}
            if not any(all(leq[c, m] for c in cands) for m in cands):
                ok = False
                break
        if not ok:
            continue
        child = np.zeros((n + 1, n + 1), dtype=bool)
        child[:n, :n] = leq
        child[n, n] = True
        child[:n, n] = leq[:, list(A)].any(axis=1)
        yield child


@lru_cache(maxsize=None)
def _semilattices(m: int) -> tuple[tuple[bytes, np.ndarray], ...]:
    if m == 1:
        return ((b"", np.ones((1, 1), dtype=bool)),)
    found: dict[bytes, np.ndarray] = {}
    for _, parent in _semilattices(m - 1):
        for child in _extend(parent):
            key, perms = _canonical_search(child)
            if key not in found:
                perm = list(perms[0])
                found[key] = child[np.ix_(perm, perm)]
    return tuple(sorted(found.items()))


def enumerate_lattices(size: int, cap: int = DEFAULT_CAP) -> list[Lattice]:
    """All lattices with ``size`` elements up to isomorphism, bottom first, top last."""
    if size < 1:
        raise ValueError("size must be positive")
    if size > cap:
        raise CapExceeded(f"lattice enumeration is capped at size {cap}, got {size}")
    return list(_lattices(size))


@lru_cache(maxsize=None)
def _lattices(size: int) -> tuple[Lattice, ...]:
    if size == 1:
        return (canonical_lattice(_from_meet([[0]])),)
    out = []
    for _, semi in _semilattices(size - 1):
        m = semi.shape[0]
        leq = np.ones((m + 1, m + 1), dtype=bool)
        leq[:m, :m] = semi
        leq[m, :m] = False
        out.append(canonical_lattice(lattice_from_leq(leq)))
    out.sort(key=lambda L: L.key)
    return tuple(out)


def relabel_lattice(L: Lattice, perm: Sequence[int]) -> Lattice:
    """Copy of L with vertex v renamed ``perm[v]``."""
    p = np.asarray(perm)
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return _from_meet(p[L.meet[inv[:, None], inv[None, :]]])
