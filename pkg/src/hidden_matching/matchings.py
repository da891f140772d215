"""Perfect matchings on {0, ..., n-1} and the two matching families.

The full family exists for every even n. The bijective-XOR family restricts
to matchings pairing the lower half with the upper half such that the edge
XOR values i^j are pairwise distinct; those values are then exactly
{n/2, ..., n-1} and the XOR determines the edge. That family is empty at
n = 4 (the order-2 group admits no complete mapping) and treated as an error
when sampled.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .bits import log2_strict
from .errors import CapExceededError

ENUMERATION_CAP = 10        # full family: (cap-1)!! = 945 matchings
BIJECTIVE_CAP = 16          # filters (n/2)! permutations


@dataclass(frozen=True)
class Matching:
    """A perfect matching, stored as edges (i, j) with i < j, sorted by i."""

    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if len(e) != 2 or e[0] >= e[1] or e[0] < 0:
                raise ValueError(f"bad edge {e!r}: need 0 <= i < j")
            seen.update(e)
        n = 2 * len(self.edges)
        if seen != set(range(n)):
            raise ValueError("edges must cover {0, ..., n-1} exactly once each")
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges must be sorted by first endpoint")
        partner = [0] * n
        for i, j in self.edges:
            partner[i] = j
            partner[j] = i
        object.__setattr__(self, "_partner", tuple(partner))

    @classmethod
    def of(cls, pairs) -> "Matching":
        """Build from unordered pairs in any order."""
        return cls(tuple(sorted(tuple(sorted(p)) for p in pairs)))

    @property
    def n(self) -> int:
        return 2 * len(self.edges)

    def partner(self, i: int) -> int:
        return self._partner[i]

    def contains_edge(self, i: int, j: int) -> bool:
        return 0 <= i < self.n and self._partner[i] == j

    def edge_of(self, i: int) -> tuple[int, int]:
        j = self._partner[i]
        return (i, j) if i < j else (j, i)

    def xor_values(self) -> tuple[int, ...]:
        return tuple(i ^ j for i, j in self.edges)

    def is_bijective_xor(self) -> bool:
        h = self.n // 2
        return all(i < h <= j for i, j in self.edges) and len(set(self.xor_values())) == h

    def edge_with_xor(self, s: int) -> tuple[int, int]:
        """The unique edge with i^j = s; meaningful for bijective-XOR matchings."""
        for i, j in self.edges:
            if i ^ j == s:
                return (i, j)
        raise ValueError(f"no edge with XOR value {s}")

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.edges]

    @classmethod
    def from_json(cls, data) -> "Matching":
        return cls.of(tuple(p) for p in data)


def _pairings(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    # pairs the lowest element with each partner in increasing order, which
    # yields matchings in lexicographic order of their sorted edge lists
    if not items:
        yield ()
        return
    first = items[0]
    for t in range(1, len(items)):
        rest = items[1:t] + items[t + 1:]
        for sub in _pairings(rest):
            yield ((first, items[t]),) + sub


@functools.lru_cache(maxsize=None)
def _full_family(n: int) -> tuple[Matching, ...]:
    return tuple(Matching(edges) for edges in _pairings(tuple(range(n))))


def enumerate_matchings(n: int, cap: int = ENUMERATION_CAP) -> tuple[Matching, ...]:
    """All perfect matchings on {0, ..., n-1}, lexicographic, (n-1)!! of them."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if n > cap:
        raise CapExceededError(f"matching enumeration needs n <= {cap}, got {n}")
    return _full_family(n)


@functools.lru_cache(maxsize=None)
def enumerate_bijective_xor_matchings(n: int) -> tuple[Matching, ...]:
    """All matchings pairing i < n/2 with j >= n/2 whose edge XORs are distinct.

    The XOR values of any member form exactly {n/2, ..., n-1}. Empty at n = 4.
    """
    log2_strict(n)
    if n > BIJECTIVE_CAP:
        raise CapExceededError(f"bijective-XOR enumeration needs n <= {BIJECTIVE_CAP}, got {n}")
    h = n // 2
    out = []
    for perm in itertools.permutations(range(h)):
        if len({i ^ perm[i] for i in range(h)}) == h:
            out.append(Matching(tuple((i, h + perm[i]) for i in range(h))))
    return tuple(out)


class FamilyKind(Enum):
    FULL = "full"
    BIJECTIVE_XOR = "bijective-xor"


@dataclass(frozen=True)
class MatchingFamily:
    """A family of matchings on {0, ..., n-1} with uniform sampling."""

    n: int
    kind: FamilyKind = FamilyKind.FULL

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"n must be even and >= 2, got {self.n}")
        if self.kind is FamilyKind.BIJECTIVE_XOR:
            log2_strict(self.n)

    def enumerate(self, cap: int = ENUMERATION_CAP) -> tuple[Matching, ...]:
        if self.kind is FamilyKind.FULL:
            return enumerate_matchings(self.n, cap=cap)
        return enumerate_bijective_xor_matchings(self.n)

    def size(self, cap: int = ENUMERATION_CAP) -> int:
        if self.kind is FamilyKind.FULL:
            out, k = 1, self.n - 1
            while k > 1:
                out *= k
                k -= 2
            return out
        return len(self.enumerate(cap=cap))

    def contains(self, m: Matching) -> bool:
        if m.n != self.n:
            return False
        return self.kind is FamilyKind.FULL or m.is_bijective_xor()

    def sample(self, rng: np.random.Generator) -> Matching:
        return sample_matching(self, rng)

    def to_json(self) -> str:
        return self.kind.value

    @classmethod
    def from_json(cls, n: int, kind: str) -> "MatchingFamily":
        return cls(n, FamilyKind(kind))


def sample_matching(family: MatchingFamily, rng: np.random.Generator) -> Matching:
    """Uniform sample from the family.

    Full family: sequential random pairing (pair the lowest unmatched index
    with a uniformly random unmatched partner), which is exactly uniform.
    Bijective-XOR family: uniform index into the enumerated list.
    """
    if family.kind is FamilyKind.BIJECTIVE_XOR:
        members = family.enumerate()
        if not members:
            raise ValueError(f"bijective-XOR family is empty at n = {family.n}")
        return members[int(rng.integers(len(members)))]
    unmatched = list(range(family.n))
    edges = []
    while unmatched:
        i = unmatched.pop(0)
        j = unmatched.pop(int(rng.integers(len(unmatched))))
        edges.append((i, j))
    return Matching(tuple(edges))


def sample_matchings_array(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorized uniform sampling from the full family.

    Returns an int array of shape (count, n/2, 2); rows are edges (i, j) with
    i < j, in no particular order. Pairs consecutive entries of random
    permutations, which hits every matching with equal multiplicity.
    """
    keys = rng.random((count, n))
    perms = np.argsort(keys, axis=1)
    pairs = perms.reshape(count, n // 2, 2)
    lo = pairs.min(axis=2)
    hi = pairs.max(axis=2)
    return np.stack([lo, hi], axis=2)
