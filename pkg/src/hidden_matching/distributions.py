"""Exact finite probability distributions with rational weights.

Used both for strategy rule outputs (private randomness is expressed as the
spread of the returned distribution) and for the closed-form outcome
distributions of the entangled-state protocols.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

# exact integer inverse-CDF sampling is used when the common denominator
# fits comfortably in a 64-bit draw
_EXACT_DENOMINATOR_LIMIT = 1 << 62


@dataclass(frozen=True)
class FiniteDistribution:
    """Outcomes paired with positive rational probabilities summing to 1."""

    items: tuple[tuple[Any, Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        seen = set()
        for outcome, p in self.items:
            if not isinstance(p, Fraction) or p <= 0:
                raise ValueError(f"probability of {outcome!r} must be a positive Fraction")
            if outcome in seen:
                raise ValueError(f"duplicate outcome {outcome!r}")
            seen.add(outcome)
            total += p
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")

    @classmethod
    def point_mass(cls, outcome) -> "FiniteDistribution":
        return cls(((outcome, Fraction(1)),))

    @classmethod
    def uniform(cls, outcomes: Iterable) -> "FiniteDistribution":
        outs = tuple(outcomes)
        p = Fraction(1, len(outs))
        return cls(tuple((o, p) for o in outs))

    def support(self) -> tuple:
        return tuple(o for o, _ in self.items)

    def probability(self, outcome) -> Fraction:
        for o, p in self.items:
            if o == outcome:
                return p
        return Fraction(0)

    def map(self, fn: Callable) -> "FiniteDistribution":
        """Pushforward under fn, merging outcomes that collide."""
        merged: dict[Any, Fraction] = {}
        for o, p in self.items:
            image = fn(o)
            merged[image] = merged.get(image, Fraction(0)) + p
        return FiniteDistribution(tuple(merged.items()))

    def expectation(self, fn: Callable[[Any], Fraction]) -> Fraction:
        return sum((p * fn(o) for o, p in self.items), Fraction(0))

    def sample(self, rng: np.random.Generator):
        """Inverse-CDF draw honoring the rational probabilities exactly."""
        denom = math.lcm(*(p.denominator for _, p in self.items))
        if denom <= _EXACT_DENOMINATOR_LIMIT:
            u = int(rng.integers(denom))
            acc = 0
            for o, p in self.items:
                acc += p.numerator * (denom // p.denominator)
                if u < acc:
                    return o
            return self.items[-1][0]
        # denominators too large for an exact integer draw; float inverse CDF
        u = float(rng.random())
        acc = 0.0
        for o, p in self.items:
            acc += float(p)
            if u < acc:
                return o
        return self.items[-1][0]
