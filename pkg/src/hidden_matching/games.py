"""Game variants, instances, outcomes, and the winning predicates.

Three variants share one instance type:

* communication game: Bob reports an edge (i, j) of his matching and a bit v,
  winning when v = x_i ^ x_j;
* nonlocal game: Alice reports a log2(n)-bit string a, Bob an edge plus a
  log2(n)-bit string b, winning when (a^b).(i^j) = x_i ^ x_j (bitwise dot
  product mod 2);
* small-output nonlocal game: Bob reports only the edge XOR value s = i^j and
  one bit w, winning when a.s = x_i ^ x_j ^ w. Requires the bijective-XOR
  family, where s pins down the edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

from .bits import dot_mod2, edge_parity, log2_strict
from .errors import CapExceededError
from .matchings import ENUMERATION_CAP, FamilyKind, Matching, MatchingFamily

EXPLICIT_TABLE_CAP = 1 << 16


class GameVariant(Enum):
    HM_COMM = "hmcomm"
    HM_NONLOCAL = "hmnl"
    HM_NONLOCAL_SMALL_OUTPUT = "hmnl-small"


@dataclass(frozen=True)
class CommOutcome:
    """Bob's report in the communication game."""

    edge: tuple[int, int]
    v: int


@dataclass(frozen=True)
class NonlocalOutcome:
    a: int
    edge: tuple[int, int]
    b: int


@dataclass(frozen=True)
class SmallOutputOutcome:
    a: int
    xor_value: int
    w: int


Outcome = Union[CommOutcome, NonlocalOutcome, SmallOutputOutcome]


@dataclass(frozen=True)
class UniformInputs:
    """Uniform x in {0,1}^n, uniform matching from the family."""

    def to_json(self):
        return {"type": "uniform"}


@dataclass(frozen=True)
class ExplicitTable:
    """Explicit rational weights pi(x, M) over the full input grid."""

    weights: tuple[tuple[tuple[int, Matching], Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        for (_, _), w in self.weights:
            if w < 0:
                raise ValueError("weights must be nonnegative")
            total += w
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")

    def weight(self, x: int, m: Matching) -> Fraction:
        for (xx, mm), w in self.weights:
            if xx == x and mm == m:
                return w
        return Fraction(0)


InputDistribution = Union[UniformInputs, ExplicitTable]


@dataclass(frozen=True)
class GameInstance:
    n: int
    variant: GameVariant
    family: MatchingFamily = None  # type: ignore[assignment]
    distribution: InputDistribution = field(default_factory=UniformInputs)

    def __post_init__(self):
        log2_strict(self.n)
        if self.family is None:
            kind = (FamilyKind.BIJECTIVE_XOR
                    if self.variant is GameVariant.HM_NONLOCAL_SMALL_OUTPUT
                    else FamilyKind.FULL)
            object.__setattr__(self, "family", MatchingFamily(self.n, kind))
        if self.family.n != self.n:
            raise ValueError("family size disagrees with n")
        if (self.variant is GameVariant.HM_NONLOCAL_SMALL_OUTPUT
                and self.family.kind is not FamilyKind.BIJECTIVE_XOR):
            raise ValueError("small-output game requires the bijective-XOR family")
        if isinstance(self.distribution, ExplicitTable):
            grid = (1 << self.n) * self.family.size()
            if grid > EXPLICIT_TABLE_CAP:
                raise CapExceededError(
                    f"explicit table over {grid} cells exceeds cap {EXPLICIT_TABLE_CAP}")

    @property
    def log_n(self) -> int:
        return log2_strict(self.n)

    def input_weight(self, x: int, m: Matching) -> Fraction:
        if isinstance(self.distribution, UniformInputs):
            return Fraction(1, (1 << self.n) * self.family.size())
        return self.distribution.weight(x, m)

    def enumerate_inputs(self, cap: int = ENUMERATION_CAP) -> Iterator[tuple[int, Matching, Fraction]]:
        """All (x, M, weight) triples with positive weight."""
        if isinstance(self.distribution, UniformInputs):
            members = self.family.enumerate(cap=cap)
            w = Fraction(1, (1 << self.n) * len(members))
            for m in members:
                for x in range(1 << self.n):
                    yield x, m, w
        else:
            for (x, m), w in self.distribution.weights:
                if w > 0:
                    yield x, m, w

    def sample_input(self, rng: np.random.Generator) -> tuple[int, Matching]:
        if isinstance(self.distribution, UniformInputs):
            x = int(rng.integers(1 << self.n, dtype=np.uint64))
            return x, self.family.sample(rng)
        u = float(rng.random())
        acc = 0.0
        for (x, m), w in self.distribution.weights:
            acc += float(w)
            if u < acc:
                return x, m
        return self.distribution.weights[-1][0]


def _check_string(value: int, width: int, label: str) -> None:
    if not 0 <= value < (1 << width):
        raise ValueError(f"{label} must be a {width}-bit string, got {value}")


def win_predicate(instance: GameInstance, x: int, m: Matching, out: Outcome) -> bool:
    """True iff the variant's winning condition holds; raises on malformed outcomes."""
    n = instance.n
    _check_string(x, n, "x")
    if m.n != n:
        raise ValueError("matching size disagrees with instance")
    log_n = instance.log_n

    if instance.variant is GameVariant.HM_COMM:
        if not isinstance(out, CommOutcome):
            raise ValueError(f"expected CommOutcome, got {type(out).__name__}")
        i, j = sorted(out.edge)
        if not m.contains_edge(i, j):
            raise ValueError(f"edge {out.edge} not in matching")
        if out.v not in (0, 1):
            raise ValueError("v must be a bit")
        return out.v == edge_parity(x, i, j)

    if instance.variant is GameVariant.HM_NONLOCAL:
        if not isinstance(out, NonlocalOutcome):
            raise ValueError(f"expected NonlocalOutcome, got {type(out).__name__}")
        i, j = sorted(out.edge)
        if not m.contains_edge(i, j):
            raise ValueError(f"edge {out.edge} not in matching")
        _check_string(out.a, log_n, "a")
        _check_string(out.b, log_n, "b")
        return dot_mod2(out.a ^ out.b, i ^ j) == edge_parity(x, i, j)

    if not isinstance(out, SmallOutputOutcome):
        raise ValueError(f"expected SmallOutputOutcome, got {type(out).__name__}")
    _check_string(out.a, log_n, "a")
    if out.w not in (0, 1):
        raise ValueError("w must be a bit")
    i, j = m.edge_with_xor(out.xor_value)
    return dot_mod2(out.a, out.xor_value) == edge_parity(x, i, j) ^ out.w


def advantage_from_probability(p) -> Fraction | float:
    """Winning probability -> winning-minus-losing advantage, 2p - 1."""
    if not 0 <= p <= 1:
        raise ValueError(f"probability out of range: {p}")
    return 2 * p - 1
