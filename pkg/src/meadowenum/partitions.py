"""Admissible partitions: parts >= 2 plus a single 1, one part's primes covering all."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .ring_enum import integer_partitions
from .rings import _prime_factors


@dataclass(frozen=True)
class AdmissiblePartition:
    parts: tuple[int, ...]  # weakly decreasing, every part >= 2; the 1 is implicit
    dominator: int  # index into parts

    @property
    def n(self) -> int:
        return sum(self.parts) + 1

    def with_one(self) -> list[int]:
        return [*self.parts, 1]

    def __str__(self):
        return f"{self.n}=" + "+".join(str(p) for p in self.with_one())


def prime_support(k: int) -> frozenset[int]:
    if k < 1:
        raise DomainError("prime_support needs a positive integer")
    return frozenset(_prime_factors(k))


def dominator_index(parts: Iterable[int]) -> int | None:
    """First part whose prime support contains every part's support, else None."""
    parts = list(parts)
    union = frozenset().union(*(prime_support(a) for a in parts)) if parts else frozenset()
    for i, a in enumerate(parts):
        if prime_support(a) >= union:
            return i
    return None


def is_admissible(parts: Iterable[int]) -> bool:
    parts = list(parts)
    if any(a < 2 for a in parts):
        raise DomainError("parts of an admissible partition (besides the single 1) must be >= 2")
    return bool(parts) and dominator_index(parts) is not None


def admissible_partitions(n: int) -> list[AdmissiblePartition]:
    """Admissible partitions of n in reverse lexicographic order of their parts."""
    if n < 3:
        raise DomainError(f"admissible partitions are defined for n >= 3, got {n}")
    out = []
    for lam in integer_partitions(n - 1):
        if lam[-1] < 2:
            continue
        k = dominator_index(lam)
        if k is not None:
            out.append(AdmissiblePartition(lam, k))
    return out
