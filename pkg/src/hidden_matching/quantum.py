"""Closed-form outcome distributions of the entangled-state protocols.

No state-vector simulator: all squared amplitudes are 0 or 2/n^2, so each
distribution is written down directly with exact rational probabilities and
the winning probability is exactly 1 by construction. An independent
amplitude-arithmetic route (`hmnl_distribution_by_amplitudes`) evaluates the
Hadamard-transformed post-measurement state term by term and exists purely to
cross-check the closed form against index-convention mistakes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import bit, dot_mod2, edge_parity, log2_strict
from .distributions import FiniteDistribution
from .games import (CommOutcome, GameVariant, NonlocalOutcome, Outcome,
                    SmallOutputOutcome)
from .matchings import Matching


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact distribution over one round's outcomes for fixed (x, M)."""

    n: int
    variant: GameVariant
    dist: FiniteDistribution

    @property
    def items(self) -> tuple[tuple[Outcome, Fraction], ...]:
        return self.dist.items

    def support(self) -> tuple[Outcome, ...]:
        return self.dist.support()

    def total(self) -> Fraction:
        return sum((p for _, p in self.items), Fraction(0))

    def sample(self, rng: np.random.Generator) -> Outcome:
        return self.dist.sample(rng)


def _check_inputs(x: int, m: Matching) -> int:
    n = m.n
    log2_strict(n)
    if not 0 <= x < (1 << n):
        raise ValueError(f"x must be an {n}-bit string, got {x}")
    return n


def hm_quantum_distribution(x: int, m: Matching) -> OutcomeDistribution:
    """Send (1/sqrt n) sum_k (-1)^{x_k} |k>, measure in the edge basis of M.

    Each edge (i, j) is observed with probability exactly 2/n, always with
    the correct parity bit v = x_i ^ x_j.
    """
    n = _check_inputs(x, m)
    p = Fraction(2, n)
    items = tuple(
        (CommOutcome(edge=(i, j), v=edge_parity(x, i, j)), p) for i, j in m.edges
    )
    return OutcomeDistribution(n, GameVariant.HM_COMM, FiniteDistribution(items))


def _parity_class(n: int, s: int, target: int) -> tuple[int, ...]:
    """All u in {0,1}^log2(n) with u.s = target."""
    return tuple(u for u in range(n) if dot_mod2(u, s) == target)


def hmnl_quantum_distribution(x: int, m: Matching) -> OutcomeDistribution:
    """Joint (edge, a, b) distribution of the shared-EPR-pairs protocol.

    Phase flip by x on Alice's half, edge projection on Bob's half, Hadamards
    on both: the edge marginal is 2/n per edge, and conditioned on an edge the
    (a, b) pair is uniform over the n^2/2 solutions of
    (a^b).(i^j) = x_i ^ x_j, each joint outcome carrying exactly 4/n^3.
    """
    n = _check_inputs(x, m)
    p = Fraction(4, n ** 3)
    items = []
    for i, j in m.edges:
        s = i ^ j
        diffs = _parity_class(n, s, edge_parity(x, i, j))
        for a in range(n):
            for d in diffs:
                items.append((NonlocalOutcome(a=a, edge=(i, j), b=a ^ d), p))
    return OutcomeDistribution(n, GameVariant.HM_NONLOCAL, FiniteDistribution(tuple(items)))


def hmnl_distribution_by_amplitudes(x: int, m: Matching) -> OutcomeDistribution:
    """Independent re-derivation of `hmnl_quantum_distribution`.

    Evaluates, per edge, the unnormalized amplitude
    (-1)^{x_i + a.i + b.i} + (-1)^{x_j + a.j + b.j} for every (a, b) and
    squares it; the joint probability of (edge, a, b) is amp^2 / n^3. Never
    consults the winning condition. O(n^2) per edge, cross-check use only.
    """
    n = _check_inputs(x, m)
    items = []
    for i, j in m.edges:
        for a in range(n):
            for b in range(n):
                sign_i = (-1) ** (bit(x, i) ^ dot_mod2(a, i) ^ dot_mod2(b, i))
                sign_j = (-1) ** (bit(x, j) ^ dot_mod2(a, j) ^ dot_mod2(b, j))
                amp = sign_i + sign_j
                if amp:
                    items.append(
                        (NonlocalOutcome(a=a, edge=(i, j), b=b), Fraction(amp * amp, n ** 3))
                    )
    return OutcomeDistribution(n, GameVariant.HM_NONLOCAL, FiniteDistribution(tuple(items)))


def hmnl_small_output_distribution(x: int, m: Matching) -> OutcomeDistribution:
    """Pushforward of the joint distribution under (edge, a, b) -> (i^j, a, b.(i^j)).

    Requires a bijective-XOR matching so the reported XOR value determines the
    edge. Every support element wins the small-output condition; the support
    holds n outcomes per edge, each with probability exactly 2/n^2.
    """
    if not m.is_bijective_xor():
        raise ValueError("small-output distribution requires a bijective-XOR matching")
    joint = hmnl_quantum_distribution(x, m)

    def push(out: NonlocalOutcome) -> SmallOutputOutcome:
        i, j = out.edge
        s = i ^ j
        return SmallOutputOutcome(a=out.a, xor_value=s, w=dot_mod2(out.b, s))

    return OutcomeDistribution(
        joint.n, GameVariant.HM_NONLOCAL_SMALL_OUTPUT, joint.dist.map(push)
    )


def sample_outcome(dist: OutcomeDistribution, rng: np.random.Generator) -> Outcome:
    return dist.sample(rng)


@dataclass(frozen=True)
class QuantumStrategy:
    """Marker strategy: play by sampling the protocol's exact distribution."""

    variant: GameVariant
    name: str = "quantum"

    def outcome_distribution(self, x: int, m: Matching) -> OutcomeDistribution:
        if self.variant is GameVariant.HM_COMM:
            return hm_quantum_distribution(x, m)
        if self.variant is GameVariant.HM_NONLOCAL:
            return hmnl_quantum_distribution(x, m)
        return hmnl_small_output_distribution(x, m)

    def play(self, x: int, m: Matching, rng: np.random.Generator) -> Outcome:
        return self.outcome_distribution(x, m).sample(rng)
