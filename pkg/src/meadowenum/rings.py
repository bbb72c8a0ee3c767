"""Finite commutative unital rings as explicit operation tables.

Elements are the integers ``0..order-1``. Most structural questions (canonical
forms, isomorphisms, homomorphisms) are answered by choosing bases of the
additive group: once generators ``g_1..g_k`` of orders ``d_1 | ... | d_k`` are
fixed, every element has unique coefficients and an additive map is determined
by the images of the generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import AxiomViolation, UnsupportedFactorization


def _as_table(rows, order):
    arr = np.array(rows, dtype=np.intc)
    if arr.shape != (order, order):
        raise AxiomViolation("shape", ())
    bad = np.argwhere((arr < 0) | (arr >= order))
    if bad.size:
        raise AxiomViolation("range", tuple(bad[0]))
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RingTable:
    order: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    name: str = ""

    def __repr__(self):
        label = self.name or f"ring of order {self.order}"
        return f"<RingTable {label}>"

    @cached_property
    def neg(self) -> np.ndarray:
        neg = np.argmax(self.add == self.zero, axis=1).astype(np.intc)
        neg.setflags(write=False)
        return neg

    @cached_property
    def additive_orders(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.zero:
                y = int(self.add[y, x])
                k += 1
            out.append(k)
        return tuple(out)

    @property
    def characteristic(self) -> int:
        return self.additive_orders[self.one]

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(np.flatnonzero((self.mul == self.one).any(axis=1)).tolist())

    @cached_property
    def idempotents(self) -> frozenset[int]:
        d = np.diagonal(self.mul)
        return frozenset(np.flatnonzero(d == np.arange(self.order)).tolist())

    @cached_property
    def nilpotents(self) -> frozenset[int]:
        out = set()
        for x in range(self.order):
            y = x
            for _ in range(self.order):
                if y == self.zero:
                    out.add(x)
                    break
                y = int(self.mul[y, x])
        return frozenset(out)

    @cached_property
    def element_invariants(self) -> tuple[tuple[int, int, int, int], ...]:
        """Per element: (additive order, unit, idempotent, nilpotent)."""
        return tuple(
            (
                self.additive_orders[x],
                int(x in self.units),
                int(x in self.idempotents),
                int(x in self.nilpotents),
            )
            for x in range(self.order)
        )

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        return _invariant_factors(self)

    @cached_property
    def key(self) -> bytes:
        return canonical_form(self)

    def multiple(self, x: int, k: int) -> int:
        y = self.zero
        for _ in range(k % self.additive_orders[x]):
            y = int(self.add[y, x])
        return y

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "zero": self.zero,
            "one": self.one,
            "add": self.add.tolist(),
            "mul": self.mul.tolist(),
            "name": self.name,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "RingTable":
        return make_ring(obj["order"], obj["add"], obj["mul"], obj["zero"], obj["one"],
                         name=obj.get("name", ""))


@dataclass(frozen=True, eq=False)
class UnitalHom:
    source: RingTable
    target: RingTable
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        if not isinstance(other, UnitalHom):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and self.map == other.map)

    def __hash__(self):
        return hash(self.map)

    def compose(self, inner: "UnitalHom") -> "UnitalHom":
        """``self ∘ inner``."""
        return UnitalHom(inner.source, self.target, tuple(self.map[v] for v in inner.map))

    @property
    def is_bijective(self) -> bool:
        return len(set(self.map)) == self.target.order == self.source.order

    @property
    def kernel_size(self) -> int:
        return sum(1 for v in self.map if v == self.target.zero)

    def violation(self) -> tuple[str, tuple[int, ...]] | None:
        """First failing homomorphism law, or None."""
        S, T, f = self.source, self.target, np.asarray(self.map)
        if len(self.map) != S.order:
            return ("length", ())
        if f[S.zero] != T.zero:
            return ("hom-zero", (S.zero,))
        if f[S.one] != T.one:
            return ("hom-one", (S.one,))
        bad = np.argwhere(f[S.add] != T.add[f[:, None], f[None, :]])
        if bad.size:
            return ("hom-add", tuple(int(v) for v in bad[0]))
        bad = np.argwhere(f[S.mul] != T.mul[f[:, None], f[None, :]])
        if bad.size:
            return ("hom-mul", tuple(int(v) for v in bad[0]))
        return None


def check_ring(R: RingTable) -> None:
    """Raise AxiomViolation naming the first failing ring law."""
    n, add, mul = R.order, R.add, R.mul
    for label, e in (("zero", R.zero), ("one", R.one)):
        if not 0 <= e < n:
            raise AxiomViolation("range", (e,))
    w = kernels.first_nonassoc(add)
    if w:
        raise AxiomViolation("add-assoc", w)
    w = kernels.first_noncommut(add)
    if w:
        raise AxiomViolation("add-comm", w)
    bad = np.flatnonzero(add[R.zero] != np.arange(n))
    if bad.size:
        raise AxiomViolation("add-identity", (int(bad[0]),))
    bad = np.flatnonzero(~(add == R.zero).any(axis=1))
    if bad.size:
        raise AxiomViolation("add-inverse", (int(bad[0]),))
    w = kernels.first_nonassoc(mul)
    if w:
        raise AxiomViolation("mul-assoc", w)
    w = kernels.first_noncommut(mul)
    if w:
        raise AxiomViolation("mul-comm", w)
    bad = np.flatnonzero(mul[R.one] != np.arange(n))
    if bad.size:
        raise AxiomViolation("mul-identity", (int(bad[0]),))
    w = kernels.first_nondistrib(add, mul)
    if w:
        raise AxiomViolation("distributivity", w)
    if (n == 1) != (R.zero == R.one):
        raise AxiomViolation("zero-one", (R.zero, R.one))


def make_ring(order: int, add, mul, zero: int, one: int, name: str = "") -> RingTable:
    R = RingTable(order, _as_table(add, order), _as_table(mul, order), int(zero), int(one), name)
    check_ring(R)
    return R


def _trusted_ring(add, mul, zero, one, name="") -> RingTable:
    add = np.ascontiguousarray(add, dtype=np.intc)
    mul = np.ascontiguousarray(mul, dtype=np.intc)
    add.setflags(write=False)
    mul.setflags(write=False)
    return RingTable(add.shape[0], add, mul, int(zero), int(one), name)


def is_unit(R: RingTable, x: int) -> bool:
    # in the zero ring 0 == 1, so 0 counts as a unit
    return x in R.units


@lru_cache(maxsize=None)
def zero_ring() -> RingTable:
    return make_ring(1, [[0]], [[0]], 0, 0, name="0")


@lru_cache(maxsize=None)
def cyclic_ring(n: int) -> RingTable:
    if n == 1:
        return zero_ring()
    r = np.arange(n)
    return make_ring(n, (r[:, None] + r[None, :]) % n, (r[:, None] * r[None, :]) % n, 0, 1,
                     name=f"Z{n}")


def product_ring(R: RingTable, S: RingTable, name: str | None = None) -> RingTable:
    """Componentwise product; the pair (r, s) has index ``r * |S| + s``."""
    m = S.order
    r = np.arange(R.order * m)
    a, b = r // m, r % m
    add = R.add[a[:, None], a[None, :]] * m + S.add[b[:, None], b[None, :]]
    mul = R.mul[a[:, None], a[None, :]] * m + S.mul[b[:, None], b[None, :]]
    if name is None:
        name = "x".join(p for p in (R.name, S.name) if p) if R.name and S.name else ""
    return _trusted_ring(add, mul, R.zero * m + S.zero, R.one * m + S.one, name)


def product_of(rings: Sequence[RingTable], name: str | None = None) -> RingTable:
    if not rings:
        return zero_ring()
    out = reduce(product_ring, rings)
    if name is not None:
        out = _trusted_ring(out.add, out.mul, out.zero, out.one, name)
    return out


def relabel(R: RingTable, perm: Sequence[int]) -> RingTable:
    """Copy of R where element x is renamed ``perm[x]``."""
    p = np.asarray(perm, dtype=np.intc)
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=np.intc)
    add = p[R.add[inv[:, None], inv[None, :]]]
    mul = p[R.mul[inv[:, None], inv[None, :]]]
    return _trusted_ring(add, mul, p[R.zero], p[R.one], R.name)


# -- additive group structure ------------------------------------------------

def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors(R: RingTable) -> tuple[int, ...]:
    orders = np.array(R.additive_orders)
    parts: dict[int, list[int]] = {}
    for p, e in _prime_factors(R.order).items():
        # log_p |{x : p^k x = 0}| = sum_i min(lambda_i, k)
        logs = [0]
        for k in range(1, e + 1):
            count = int(np.sum((p ** k) % orders == 0))
            c, t = 0, count
            while t > 1:
                t //= p
                c += 1
            logs.append(c)
        at_least = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        lam = [sum(1 for a in at_least if a > i) for i in range(at_least[0] if at_least else 0)]
        parts[p] = sorted(lam, reverse=True)
    k = max((len(v) for v in parts.values()), default=0)
    factors = []
    for i in range(k):
        factors.append(prod(p ** lam[i] for p, lam in parts.items() if i < len(lam)))
    return tuple(sorted(factors))


def standard_group(factors: Sequence[int]) -> np.ndarray:
    """Addition table of Z_{d_1} x ... x Z_{d_k}, first factor most significant."""
    n = prod(factors)
    coords = np.array(np.unravel_index(np.arange(n), tuple(factors) or (1,))).T
    if not factors:
        return np.zeros((1, 1), dtype=np.intc)
    d = np.array(factors)
    s = (coords[:, None, :] + coords[None, :, :]) % d
    return np.ravel_multi_index(tuple(np.moveaxis(s, -1, 0)), tuple(factors)).astype(np.intc)


def _multiples(R: RingTable, g: int, count: int | None = None) -> np.ndarray:
    out = [R.zero]
    for _ in range((R.additive_orders[g] if count is None else count) - 1):
        out.append(int(R.add[out[-1], g]))
    return np.array(out, dtype=np.intc)


def _span_labels(R: RingTable, gens: Sequence[int], radix: Sequence[int] | None = None) -> np.ndarray:
    """phi[c] = sum c_i g_i over the mixed-radix coefficient index c."""
    phi = np.array([R.zero], dtype=np.intc)
    for i, g in enumerate(gens):
        mult = _multiples(R, g, None if radix is None else radix[i])
        phi = R.add[phi[:, None], mult[None, :]].ravel()
    return phi


def iter_bases(R: RingTable, first: int | None = None, allowed=None) -> Iterator[tuple[int, ...]]:
    """Yield every basis (g_1..g_k) with ord(g_i) equal to the i-th invariant factor.

    Generators are chosen from the largest factor down. ``first`` pins the
    generator of the largest factor; ``allowed(i, x)`` filters candidates.
    """
    d = R.invariant_factors
    k = len(d)
    orders = R.additive_orders
    chosen: list[int] = [0] * k

    def rec(i: int, span: np.ndarray):
        if i < 0:
            yield tuple(chosen)
            return
        inspan = np.zeros(R.order, dtype=bool)
        inspan[span] = True
        if i == k - 1 and first is not None:
            cands: Iterable[int] = [first] if orders[first] == d[i] else []
        else:
            cands = (x for x in range(R.order) if orders[x] == d[i])
        for x in cands:
            if allowed is not None and not allowed(i, x):
                continue
            mult = _multiples(R, x)
            if inspan[mult[1:]].any():
                continue
            chosen[i] = x
            yield from rec(i - 1, R.add[span[:, None], mult[None, :]].ravel())

    yield from rec(k - 1, np.array([R.zero], dtype=np.intc))



def _basis_perm(R: RingTable, basis: Sequence[int]) -> np.ndarray:
    return _span_labels(R, basis)


def canonical_form(R: RingTable) -> bytes:
    """Relabeling-invariant key: minimum multiplication table over all bases.

    Under a basis labeling the addition table is the standard one for the
    invariant factors, so the key is those factors plus the least relabeled
    multiplication table.
    """
    d = R.invariant_factors
    perms = np.array([_basis_perm(R, b) for b in iter_bases(R)], dtype=np.intc)
    inv = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    inv[rows, perms] = np.arange(R.order, dtype=np.intc)[None, :]
    _, best = kernels.min_relabeled(R.mul, perms, inv)
    header = np.array([R.order, len(d), *d], dtype=np.int32).tobytes()
    return header + np.asarray(best, dtype=np.int32).tobytes()


def canonical_ring(R: RingTable) -> RingTable:
    """The representative of R's class whose tables are the canonical ones."""
    d = R.invariant_factors
    perms = np.array([_basis_perm(R, b) for b in iter_bases(R)], dtype=np.intc)
    inv = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    inv[rows, perms] = np.arange(R.order, dtype=np.intc)[None, :]
    b, best = kernels.min_relabeled(R.mul, perms, inv)
    out = _trusted_ring(standard_group(d), best, inv[b][R.zero], inv[b][R.one], R.name)
    out.__dict__["invariant_factors"] = d
    return out


# -- homomorphisms -------------------------------------------------------------

def _iter_homs(R: RingTable, S: RingTable, match=None) -> Iterator[UnitalHom]:
    if R.order == 1:
        # 0 = 1 in R, so only a zero target ring can receive a unital map
        if S.order == 1:
            yield UnitalHom(R, S, (S.zero,))
        return
    if S.order == 1:
        yield UnitalHom(R, S, (S.zero,) * R.order)
        return
    d = R.invariant_factors
    if R.characteristic % S.characteristic:
        return
    basis = next(iter_bases(R, first=R.one))
    phi = _basis_perm(R, basis)
    s_orders = np.array(S.additive_orders)
    choices = []
    for i, g in enumerate(basis):
        if g == R.one:
            choices.append([S.one])
            continue
        cands = np.flatnonzero(d[i] % s_orders == 0).tolist()
        if match is not None:
            cands = [y for y in cands if match(g, y)]
        choices.append(cands)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i, len(basis))]
    for images in itertools.product(*choices):
        psi = _span_labels(S, images, d)
        f = np.empty(R.order, dtype=np.intc)
        f[phi] = psi
        if all(f[R.mul[basis[i], basis[j]]] == S.mul[images[i], images[j]] for i, j in pairs):
            yield UnitalHom(R, S, tuple(int(v) for v in f))


def enum_homs(R: RingTable, S: RingTable) -> list[UnitalHom]:
    """All unital ring homomorphisms R -> S, sorted by their value tuples."""
    return sorted(_iter_homs(R, S), key=lambda h: h.map)


def ring_isomorphisms(R: RingTable, S: RingTable) -> list[UnitalHom]:
    if R.order != S.order or not _same_invariants(R, S):
        return []
    ri, si = R.element_invariants, S.element_invariants
    return sorted((h for h in _iter_homs(R, S, match=lambda x, y: ri[x] == si[y])
                   if h.is_bijective), key=lambda h: h.map)


def automorphisms(R: RingTable) -> list[UnitalHom]:
    return ring_isomorphisms(R, R)


def _summary(R: RingTable):
    return (R.order, R.characteristic, R.invariant_factors, len(R.units),
            len(R.idempotents), len(R.nilpotents))


def _same_invariants(R: RingTable, S: RingTable) -> bool:
    return _summary(R) == _summary(S) and sorted(R.element_invariants) == sorted(S.element_invariants)


def is_isomorphic(R: RingTable, S: RingTable) -> UnitalHom | None:
    """A bijective unital homomorphism R -> S, or None."""
    if R.order != S.order or not _same_invariants(R, S):
        return None
    ri, si = R.element_invariants, S.element_invariants
    for h in _iter_homs(R, S, match=lambda x, y: ri[x] == si[y]):
        if h.is_bijective:
            return h
    return None


# -- the witness construction for prime supports -------------------------------

def _factorization(spec) -> dict[int, int]:
    if isinstance(spec, int):
        return _prime_factors(spec)
    if isinstance(spec, Mapping):
        return {int(p): int(a) for p, a in spec.items() if a}
    return dict(_prime_factors(prod(spec)))


def construct_witness_hom(m_primes, n_primes) -> tuple[RingTable, RingTable, UnitalHom]:
    """Rings S = prod Z_p^a, T = prod Z_p^b and a unital hom S -> T.

    Each p-block of S is projected to its first coordinate and then sent
    diagonally into the p-block of T. Factorizations may be given as integers,
    ``{p: exponent}`` mappings, or lists of prime factors with repetition.
    """
    m, n = _factorization(m_primes), _factorization(n_primes)
    missing = set(n) - set(m)
    if missing:
        raise UnsupportedFactorization(
            f"primes {sorted(missing)} divide the target order but not the source order")
    s_factors = [p for p in sorted(m) for _ in range(m[p])]
    t_factors = [p for p in sorted(n) for _ in range(n[p])]
    S = product_of([cyclic_ring(p) for p in s_factors])
    T = product_of([cyclic_ring(p) for p in t_factors])
    first_slot = {}
    for i, p in enumerate(s_factors):
        first_slot.setdefault(p, i)
    coords = np.array(np.unravel_index(np.arange(S.order), tuple(s_factors) or (1,))).T
    if t_factors:
        picked = np.stack([coords[:, first_slot[p]] for p in t_factors], axis=1)
        images = np.ravel_multi_index(tuple(picked.T), tuple(t_factors))
    else:
        images = np.zeros(S.order, dtype=int)
    h = UnitalHom(S, T, tuple(int(v) for v in images))
    bad = h.violation()
    if bad:  # pragma: no cover - the construction is always a hom
        raise AxiomViolation(*bad)
    return S, T, h


# -- display names ---------------------------------------------------------------

def _subring_at(R: RingTable, e: int) -> RingTable:
    """The ring eR with identity e, for an idempotent e."""
    elems = sorted(set(int(v) for v in R.mul[e]))
    index = {x: i for i, x in enumerate(elems)}
    a = np.array(elems)
    add = np.vectorize(index.__getitem__)(R.add[a[:, None], a[None, :]])
    mul = np.vectorize(index.__getitem__)(R.mul[a[:, None], a[None, :]])
    return _trusted_ring(add, mul, index[int(R.mul[e, R.zero])], index[e])


def describe(R: RingTable) -> str:
    """Short human label such as ``Z6``, ``F4``, ``Z2xZ2`` or ``M2``."""
    n = R.order
    if n == 1:
        return "0"
    if len(R.invariant_factors) == 1:
        return f"Z{n}"
    if len(R.units) == n - 1:
        return f"F{n}"
    nontrivial = sorted(R.idempotents - {R.zero, R.one})
    if nontrivial:
        e = nontrivial[0]
        f = int(R.add[R.one, R.neg[e]])
        return "x".join(sorted((describe(_subring_at(R, e)), describe(_subring_at(R, f))),
                               key=lambda s: (len(s), s)))
    if n == 4:
        return "M2"
    p = R.characteristic
    if n == p * p:
        return f"Z{p}[x]/(x^2)"
    return f"L{n}c{R.characteristic}u{len(R.units)}"


def named(R: RingTable, name: str | None = None) -> RingTable:
    out = _trusted_ring(R.add, R.mul, R.zero, R.one, name if name is not None else describe(R))
    for attr in ("key", "invariant_factors"):
        if attr in R.__dict__:
            out.__dict__[attr] = R.__dict__[attr]
    return out
