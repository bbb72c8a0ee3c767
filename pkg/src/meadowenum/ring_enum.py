"""Isomorphism classes of finite commutative unital rings of a given order.

Two independent routes:

* ``brute_force_rings`` fixes each abelian group ``Z_{d_1} x ... x Z_{d_k}`` and
  scans every symmetric choice of structure constants ``e_i * e_j`` (the
  products of basis elements), keeping the associative, unital ones;
* the structured route assembles rings as direct products of local rings, one
  block per prime, using local seeds taken from the brute-force search.
"""

from __future__ import annotations

import enum
import itertools
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from pathlib import Path

import numpy as np

from .errors import CapExceeded
from .rings import (
    RingTable,
    _prime_factors,
    _trusted_ring,
    canonical_ring,
    cyclic_ring,
    named,
    product_of,
    standard_group,
    zero_ring,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 8
LOCAL_SEED_CAP = 9
GENERATOR_VERSION = 1
_CHUNK = 1 << 15


class Provenance(str, enum.Enum):
    BRUTE_FORCE = "BruteForce"
    STRUCTURED = "Structured"
    LOADED = "Loaded"


@dataclass(frozen=True)
class RingCatalog:
    order: int
    classes: tuple[RingTable, ...]
    provenance: Provenance

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    @property
    def keys(self) -> list[bytes]:
        return [R.key for R in self.classes]


def integer_partitions(n: int, max_part: int | None = None):
    """Partitions of n as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def abelian_group_types(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists d_1 | d_2 | ... of every abelian group of this order."""
    per_prime = []
    for p, e in sorted(_prime_factors(order).items()):
        per_prime.append([(p, lam) for lam in integer_partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        k = max((len(lam) for _, lam in combo), default=0)
        factors = [prod(p ** lam[i] for p, lam in combo if i < len(lam)) for i in range(k)]
        out.append(tuple(sorted(factors)))
    return sorted(out)


def _rings_on_group(d: tuple[int, ...]) -> list[RingTable]:
    """Every ring multiplication on Z_{d_1} x ... x Z_{d_k} with a fixed basis."""
    k = len(d)
    n = prod(d)
    dv = np.array(d)
    coords = np.array(np.unravel_index(np.arange(n), d)).T  # (n, k)
    slots = [(i, j) for i in range(k) for j in range(i, k)]
    allowed = []
    for i, j in slots:
        g = gcd(d[i], d[j])
        ok = np.all((g * coords) % dv == 0, axis=1)
        allowed.append(np.flatnonzero(ok))
    sizes = tuple(len(a) for a in allowed)
    total = prod(sizes)
    log.debug("group %s: %d candidate structure-constant tables", d, total)
    eye = np.eye(k, dtype=np.int64)
    found = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK))
        picks = np.unravel_index(idx, sizes)
        C = np.zeros((len(idx), k, k, k), dtype=np.int64)
        for s, (i, j) in enumerate(slots):
            vec = coords[allowed[s][picks[s]]]
            C[:, i, j, :] = vec
            C[:, j, i, :] = vec
        # (e_i e_j) e_l against e_i (e_j e_l)
        left = np.einsum("nijm,nmlq->nijlq", C, C) % dv
        right = np.einsum("njlm,nimq->nijlq", C, C) % dv
        ok = np.all((left == right).reshape(len(idx), -1), axis=1)
        if not ok.any():
            continue
        Cs = C[ok]
        # u is an identity iff u e_i = e_i for every basis element
        act = np.einsum("um,nmiq->nuiq", coords, Cs) % dv
        unital = np.all((act == eye).reshape(len(Cs), n, -1), axis=2)
        for c, row in zip(Cs, unital):
            ones = np.flatnonzero(row)
            if ones.size:
                found.append((c, int(ones[0])))
    out = []
    add = standard_group(d)
    for c, one in found:
        prodvec = np.einsum("xi,yj,ijq->xyq", coords, coords, c) % dv
        mul = np.ravel_multi_index(tuple(np.moveaxis(prodvec, -1, 0)), d)
        out.append(_trusted_ring(add, mul, 0, one))
    return out


def _dedup(rings) -> tuple[RingTable, ...]:
    seen: dict[bytes, RingTable] = {}
    for R in rings:
        seen.setdefault(R.key, R)
    out = []
    taken: dict[str, int] = {}
    for k in sorted(seen):
        R = canonical_ring(seen[k])
        R.__dict__["key"] = k
        R = named(R)
        taken[R.name] = taken.get(R.name, 0) + 1
        if taken[R.name] > 1:
            R = named(R, f"{R.name}#{taken[R.name]}")
        out.append(R)
    return tuple(out)


@lru_cache(maxsize=None)
def _brute_force(order: int) -> tuple[RingTable, ...]:
    if order == 1:
        return (zero_ring(),)
    found = []
    for d in abelian_group_types(order):
        found.extend(_rings_on_group(d))
    return _dedup(found)


def brute_force_rings(order: int, cap: int = DEFAULT_CAP) -> RingCatalog:
    """Exhaustive structure-constant search; the oracle for small orders."""
    if order < 1:
        raise ValueError("order must be positive")
    if order > cap:
        raise CapExceeded(f"brute-force ring search is capped at order {cap}, got {order}")
    return RingCatalog(order, _brute_force(order), Provenance.BRUTE_FORCE)


def _is_local(R: RingTable) -> bool:
    return len(R.idempotents) == (1 if R.order == 1 else 2)


@lru_cache(maxsize=None)
def local_seeds(q: int, seed_cap: int = LOCAL_SEED_CAP) -> tuple[RingTable, ...]:
    """Local rings of prime-power order q."""
    fac = _prime_factors(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = fac.items()
    if e == 1:
        return (cyclic_ring(p),)
    if q > seed_cap:
        raise CapExceeded(
            f"no local-ring seeds for order {q}; seeds cover prime powers up to {seed_cap}")
    return tuple(R for R in _brute_force(q) if _is_local(R))


def structured_rings(order: int, seed_cap: int = LOCAL_SEED_CAP) -> RingCatalog:
    """All rings of the order as products of local seeds, one factor per prime block."""
    blocks = []
    for p, e in sorted(_prime_factors(order).items()):
        choices = []
        for lam in integer_partitions(e):
            # a multiset of local rings with orders p^lam_i
            pools = [local_seeds(p ** a, seed_cap) for a in lam]
            for combo in itertools.product(*[range(len(pl)) for pl in pools]):
                if any(lam[i] == lam[i + 1] and combo[i] > combo[i + 1]
                       for i in range(len(lam) - 1)):
                    continue
                choices.append([pools[i][c] for i, c in enumerate(combo)])
        blocks.append(choices)
    rings = [product_of([R for blk in pick for R in blk]) for pick in itertools.product(*blocks)]
    if order == 1:
        rings = [zero_ring()]
    return RingCatalog(order, _dedup(rings), Provenance.STRUCTURED)


def _cache_dir() -> Path | None:
    path = os.environ.get("MEADOWENUM_CACHE")
    return Path(path) if path else None


def enumerate_rings(order: int, cap: int = DEFAULT_CAP, seed_cap: int = LOCAL_SEED_CAP) -> RingCatalog:
    """The ring catalog of an order: brute force up to ``cap``, products beyond it."""
    return _enumerate_rings(order, cap, seed_cap)


@lru_cache(maxsize=None)
def _enumerate_rings(order: int, cap: int, seed_cap: int) -> RingCatalog:
    cache = _cache_dir()
    path = cache / f"rings-{order}-v{GENERATOR_VERSION}.json" if cache else None
    if path is not None and path.exists():
        from .catalog import load_catalog

        return RingCatalog(order, tuple(load_catalog(path)), Provenance.LOADED)
    if order <= cap:
        cat = brute_force_rings(order, cap)
    else:
        try:
            cat = structured_rings(order, seed_cap)
        except CapExceeded as exc:
            raise CapExceeded(
                f"cannot enumerate rings of order {order}: {exc}; brute force covers orders "
                f"up to {cap}, products cover orders whose prime-power parts are primes or "
                f"at most {seed_cap}") from None
    if path is not None:
        from .catalog import save_catalog

        save_catalog("rings", list(cat.classes), path)
    return cat
