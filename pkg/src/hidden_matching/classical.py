"""Classical protocols and the strategy transforms between the two settings.

Covers the majority-block communication protocol (with its cross-block-edge
event), the shared-randomness simulation of a communication protocol as a
nonlocal strategy, the reverse reduction from nonlocal strategies to one-way
protocols, and the Grothendieck-style hyperplane-rounding strategy that works
for arbitrary input distributions.

Rules return exact `FiniteDistribution`s; private randomness is the spread of
the returned distribution, so exact evaluation enumerates it and samplers draw
from it. Shared randomness is an explicit stream passed by the evaluator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .bits import bit, dot_mod2, edge_parity, log2_strict, lowest_set_bit
from .distributions import FiniteDistribution
from .games import CommOutcome, GameVariant, NonlocalOutcome, SmallOutputOutcome
from .matchings import (FamilyKind, Matching, MatchingFamily,
                        enumerate_matchings, sample_matchings_array)

__all__ = [
    "ConstantShared", "UniformShared", "GaussianShared", "ProductShared",
    "CommProtocol", "FunctionCommProtocol", "TableCommProtocol",
    "MajorityBlockProtocol", "random_comm_protocol",
    "constant_message_protocol", "pair_parity_protocol",
    "cross_block_event_probability",
    "NonlocalStrategy", "FunctionNonlocalStrategy", "RandomOutputStrategy",
    "DeterministicStrategyPair", "random_deterministic_pair",
    "solve_b_for_parity", "SimulatedCommStrategy", "nonlocal_from_comm",
    "ReducedCommProtocol", "comm_from_nonlocal",
    "GrothendieckVectors", "grothendieck_vectors",
    "HyperplaneRoundingStrategy", "hyperplane_rounding_strategy",
    "rounding_identity_pairs", "rounding_identity_check",
]


# ---------------------------------------------------------------------------
# shared randomness

@dataclass(frozen=True)
class ConstantShared:
    """No shared randomness."""

    def is_discrete(self) -> bool:
        return True

    def support_size(self) -> int:
        return 1

    def enumerate(self) -> Iterator[tuple[None, Fraction]]:
        yield None, Fraction(1)

    def sample(self, rng: np.random.Generator):
        return None


@dataclass(frozen=True)
class UniformShared:
    """Uniform choice from a finite value tuple."""

    values: tuple

    def is_discrete(self) -> bool:
        return True

    def support_size(self) -> int:
        return len(self.values)

    def enumerate(self):
        p = Fraction(1, len(self.values))
        for v in self.values:
            yield v, p

    def sample(self, rng: np.random.Generator):
        return self.values[int(rng.integers(len(self.values)))]


@dataclass(frozen=True)
class GaussianShared:
    """Standard normal vector; continuous, so exact evaluation refuses it."""

    dim: int

    def is_discrete(self) -> bool:
        return False

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return rng.standard_normal(self.dim)


@dataclass(frozen=True)
class ProductShared:
    """Independent product; the value is a tuple of the parts' values."""

    parts: tuple

    def is_discrete(self) -> bool:
        return all(p.is_discrete() for p in self.parts)

    def support_size(self) -> int:
        out = 1
        for p in self.parts:
            out *= p.support_size()
        return out

    def enumerate(self):
        def rec(idx):
            if idx == len(self.parts):
                yield (), Fraction(1)
                return
            for head, ph in self.parts[idx].enumerate():
                for tail, pt in rec(idx + 1):
                    yield (head,) + tail, ph * pt
        yield from rec(0)

    def sample(self, rng: np.random.Generator):
        return tuple(p.sample(rng) for p in self.parts)


# ---------------------------------------------------------------------------
# one-way communication protocols

class CommProtocol:
    """Deterministic message rule plus a (possibly randomized) decision rule."""

    n: int
    c: int
    name: str = "comm"

    def message_rule(self, x: int) -> int:
        raise NotImplementedError

    def decision_rule(self, m: int, matching: Matching) -> FiniteDistribution:
        """Distribution over (edge, v) pairs; must always return an edge of M."""
        raise NotImplementedError

    def play(self, x: int, matching: Matching, rng: np.random.Generator) -> CommOutcome:
        edge, v = self.decision_rule(self.message_rule(x), matching).sample(rng)
        return CommOutcome(edge=edge, v=v)


class FunctionCommProtocol(CommProtocol):
    def __init__(self, n: int, c: int, message_fn: Callable[[int], int],
                 decide_fn: Callable[[int, Matching], FiniteDistribution],
                 name: str = "comm"):
        self.n = n
        self.c = c
        self._message_fn = message_fn
        self._decide_fn = decide_fn
        self.name = name

    def message_rule(self, x: int) -> int:
        return self._message_fn(x)

    def decision_rule(self, m: int, matching: Matching) -> FiniteDistribution:
        return self._decide_fn(m, matching)


class TableCommProtocol(CommProtocol):
    """Protocol given by explicit tables over a matching family.

    ``messages[x]`` is Alice's message; ``decisions[m][t]`` is the
    deterministic (edge, v) Bob plays for message m and the t-th matching of
    the family's enumeration order.
    """

    def __init__(self, n: int, c: int, messages: Sequence[int],
                 decisions, family: MatchingFamily | None = None,
                 name: str = "table"):
        if len(messages) != 1 << n:
            raise ValueError("messages table must cover {0,1}^n")
        if any(not 0 <= m < (1 << c) for m in messages):
            raise ValueError("message out of range for c bits")
        self.n = n
        self.c = c
        self.family = family or MatchingFamily(n, FamilyKind.FULL)
        self.messages = tuple(messages)
        self.decisions = tuple(tuple((tuple(e), v) for e, v in row) for row in decisions)
        self._index = {m: t for t, m in enumerate(self.family.enumerate())}
        self.name = name
        for row in self.decisions:
            if len(row) != len(self._index):
                raise ValueError("decision rows must cover the matching family")

    def message_rule(self, x: int) -> int:
        return self.messages[x]

    def decision_rule(self, m: int, matching: Matching) -> FiniteDistribution:
        edge, v = self.decisions[m][self._index[matching]]
        return FiniteDistribution.point_mass((edge, v))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "family": self.family.kind.value,
            "messages": list(self.messages),
            "decisions": [[[e[0], e[1], v] for (e, v) in row] for row in self.decisions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TableCommProtocol":
        family = MatchingFamily(data["n"], FamilyKind(data.get("family", "full")))
        decisions = [[((i, j), v) for i, j, v in row] for row in data["decisions"]]
        return cls(data["n"], data["c"], data["messages"], decisions, family=family)


def random_comm_protocol(n: int, c: int, rng: np.random.Generator,
                         family: MatchingFamily | None = None) -> TableCommProtocol:
    """Uniformly random message table and deterministic decision table."""
    family = family or MatchingFamily(n, FamilyKind.FULL)
    members = family.enumerate()
    messages = [int(v) for v in rng.integers(0, 1 << c, size=1 << n)]
    decisions = []
    for m in range(1 << c):
        row = []
        for matching in members:
            edge = matching.edges[int(rng.integers(len(matching.edges)))]
            row.append((edge, int(rng.integers(2))))
        decisions.append(row)
    return TableCommProtocol(n, c, messages, decisions, family=family,
                             name=f"random-table:c={c}")


def constant_message_protocol(n: int, decide_fn=None) -> FunctionCommProtocol:
    """c = 0 protocol: Bob sees nothing; default decision is uniform edge+bit."""
    def default_decide(_m: int, matching: Matching) -> FiniteDistribution:
        return FiniteDistribution.uniform(
            tuple((e, v) for e in matching.edges for v in (0, 1)))

    return FunctionCommProtocol(n, 0, lambda x: 0, decide_fn or default_decide,
                                name="constant")


def pair_parity_protocol(n: int, i: int = 0, j: int = 1) -> FunctionCommProtocol:
    """Send x_i ^ x_j; Bob reports (i, j) with that bit when his matching has it.

    Simple 1-bit protocol winning with probability 1/(n-1) + (1 - 1/(n-1))/2;
    useful as an explicit strategy at sizes where the majority protocol's
    square-root block structure does not exist.
    """
    if i == j:
        raise ValueError("need two distinct coordinates")
    lo, hi = min(i, j), max(i, j)

    def decide(m: int, matching: Matching) -> FiniteDistribution:
        if matching.contains_edge(lo, hi):
            return FiniteDistribution.point_mass(((lo, hi), m))
        return FiniteDistribution.uniform(
            tuple((e, v) for e in matching.edges for v in (0, 1)))

    return FunctionCommProtocol(n, 1, lambda x: edge_parity(x, lo, hi), decide,
                                name=f"pair:{lo},{hi}")


# ---------------------------------------------------------------------------
# majority-block protocol

class MajorityBlockProtocol(CommProtocol):
    """Block majorities of the first sqrt(n) bits.

    For c >= 2 Alice sends the c block majorities. For c = 1 she runs the
    two-block structure and sends the XOR of the two majorities; Bob's
    qualifying edges are the ones crossing those two blocks and his guess is
    the received bit. Ties in a block resolve to 0.

    Bob wins through the cross-block-edge event: if his matching contains an
    edge inside the first sqrt(n) coordinates whose endpoints lie in distinct
    blocks, he picks one such edge uniformly and guesses the XOR of the two
    block majorities; otherwise he plays a uniformly random edge and bit.
    """

    def __init__(self, n: int, c: int):
        root = math.isqrt(n)
        if root * root != n:
            raise ValueError(f"majority protocol needs square n, got {n}")
        if not 1 <= c <= root:
            raise ValueError(f"need 1 <= c <= sqrt(n) = {root}, got c={c}")
        blocks = c if c >= 2 else 2
        if root % blocks:
            raise ValueError(f"block count {blocks} must divide sqrt(n) = {root}")
        self.n = n
        self.c = c
        self.root = root
        self.blocks = blocks
        self.block_size = root // blocks
        self.name = f"majority:c={c}"

    def _block_majorities(self, x: int) -> list[int]:
        k = self.block_size
        out = []
        for t in range(self.blocks):
            ones = sum(bit(x, t * k + u) for u in range(k))
            out.append(1 if 2 * ones > k else 0)
        return out

    def message_rule(self, x: int) -> int:
        maj = self._block_majorities(x)
        if self.c == 1:
            return maj[0] ^ maj[1]
        out = 0
        for t, b in enumerate(maj):
            out |= b << t
        return out

    def block_of(self, i: int) -> int:
        return i // self.block_size

    def qualifying_edges(self, matching: Matching) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j) for i, j in matching.edges
            if j < self.root and self.block_of(i) != self.block_of(j))

    def has_cross_block_edge(self, matching: Matching) -> bool:
        return bool(self.qualifying_edges(matching))

    def decision_rule(self, m: int, matching: Matching) -> FiniteDistribution:
        quals = self.qualifying_edges(matching)
        if quals:
            if self.c == 1:
                return FiniteDistribution.uniform(tuple((e, m) for e in quals))
            return FiniteDistribution.uniform(tuple(
                (e, bit(m, self.block_of(e[0])) ^ bit(m, self.block_of(e[1])))
                for e in quals))
        return FiniteDistribution.uniform(
            tuple((e, v) for e in matching.edges for v in (0, 1)))

    # vectorized fast path for uniform inputs on the full family
    def play_batch(self, rng: np.random.Generator, count: int):
        n, root, k = self.n, self.root, self.block_size
        xs = rng.integers(0, 2, size=(count, n), dtype=np.int8)
        pairs = sample_matchings_array(n, count, rng)
        lo, hi = pairs[:, :, 0], pairs[:, :, 1]

        sums = xs[:, :root].reshape(count, self.blocks, k).sum(axis=2)
        maj = (2 * sums > k).astype(np.int8)

        qual = (hi < root) & ((lo // k) != (hi // k))
        has_event = qual.any(axis=1)
        keys = np.where(qual, rng.random(qual.shape), -1.0)
        pick_q = keys.argmax(axis=1)
        pick_r = rng.integers(0, n // 2, size=count)
        v_rand = rng.integers(0, 2, size=count, dtype=np.int8)
        pick = np.where(has_event, pick_q, pick_r)

        rows = np.arange(count)
        i_out = lo[rows, pick]
        j_out = hi[rows, pick]
        parity = xs[rows, i_out] ^ xs[rows, j_out]
        if self.c == 1:
            guess_e = maj[:, 0] ^ maj[:, 1]
        else:
            # fallback rows carry out-of-range indices; np.where drops them
            bi = np.minimum(i_out // k, self.blocks - 1)
            bj = np.minimum(j_out // k, self.blocks - 1)
            guess_e = maj[rows, bi] ^ maj[rows, bj]
        guess = np.where(has_event, guess_e, v_rand)
        wins = guess == parity
        return wins, {"cross-block-edge": has_event}


def cross_block_event_probability(n: int, c: int, samples: int = 1_000_000,
                                  seed: int = 0, enumeration_cap: int = 10) -> dict:
    """Probability that a uniform matching has a qualifying cross-block edge.

    Exact by enumeration when the full family fits under the cap, otherwise a
    Monte Carlo estimate with a normal-approximation standard error. The
    returned estimate exceeds 1/10 for every valid (n, c).
    """
    proto = MajorityBlockProtocol(n, c)
    if n <= enumeration_cap:
        members = enumerate_matchings(n, cap=enumeration_cap)
        hits = sum(1 for m in members if proto.has_cross_block_edge(m))
        exact = Fraction(hits, len(members))
        return {"n": n, "c": c, "mode": "exact", "probability": exact,
                "estimate": float(exact), "stderr": 0.0,
                "samples": None, "seed": None}
    root, k = proto.root, proto.block_size
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    chunk = 1 << 17
    while done < samples:
        size = min(chunk, samples - done)
        pairs = sample_matchings_array(n, size, rng)
        lo, hi = pairs[:, :, 0], pairs[:, :, 1]
        qual = (hi < root) & ((lo // k) != (hi // k))
        hits += int(qual.any(axis=1).sum())
        done += size
    est = hits / samples
    stderr = math.sqrt(max(est * (1 - est), 1e-12) / samples)
    return {"n": n, "c": c, "mode": "mc", "probability": None, "estimate": est,
            "stderr": stderr, "samples": samples, "seed": seed}


# ---------------------------------------------------------------------------
# nonlocal strategies

class NonlocalStrategy:
    """Shared-randomness strategy for the nonlocal games."""

    n: int
    variant: GameVariant = GameVariant.HM_NONLOCAL
    shared = ConstantShared()
    name: str = "nonlocal"

    def alice_rule(self, x: int, r) -> FiniteDistribution:
        raise NotImplementedError

    def bob_rule(self, matching: Matching, r) -> FiniteDistribution:
        """Distribution over (edge, b), or over (xor_value, w) for the
        small-output variant."""
        raise NotImplementedError

    def outcome(self, a, bob_out):
        if self.variant is GameVariant.HM_NONLOCAL:
            edge, b = bob_out
            return NonlocalOutcome(a=a, edge=edge, b=b)
        s, w = bob_out
        return SmallOutputOutcome(a=a, xor_value=s, w=w)

    def play(self, x: int, matching: Matching, rng: np.random.Generator):
        r = self.shared.sample(rng)
        a = self.alice_rule(x, r).sample(rng)
        bob_out = self.bob_rule(matching, r).sample(rng)
        return self.outcome(a, bob_out)


class FunctionNonlocalStrategy(NonlocalStrategy):
    def __init__(self, n: int, alice_fn, bob_fn, shared=ConstantShared(),
                 variant: GameVariant = GameVariant.HM_NONLOCAL, name: str = "nonlocal"):
        self.n = n
        self._alice_fn = alice_fn
        self._bob_fn = bob_fn
        self.shared = shared
        self.variant = variant
        self.name = name

    def alice_rule(self, x: int, r) -> FiniteDistribution:
        return self._alice_fn(x, r)

    def bob_rule(self, matching: Matching, r) -> FiniteDistribution:
        return self._bob_fn(matching, r)


class RandomOutputStrategy(NonlocalStrategy):
    """Both parties ignore everything and answer uniformly; value exactly 1/2."""

    def __init__(self, n: int, variant: GameVariant = GameVariant.HM_NONLOCAL):
        if variant is GameVariant.HM_COMM:
            raise ValueError("use constant_message_protocol for the communication game")
        self.n = n
        self.variant = variant
        self.name = "random"

    def alice_rule(self, x: int, r) -> FiniteDistribution:
        return FiniteDistribution.uniform(tuple(range(self.n)))

    def bob_rule(self, matching: Matching, r) -> FiniteDistribution:
        if self.variant is GameVariant.HM_NONLOCAL:
            return FiniteDistribution.uniform(tuple(
                (e, b) for e in matching.edges for b in range(self.n)))
        return FiniteDistribution.uniform(tuple(
            (s, w) for s in matching.xor_values() for w in (0, 1)))


@dataclass(frozen=True)
class DeterministicStrategyPair:
    """Full response tables: a per input x and (edge, b) per matching.

    Bob's table is aligned with the family's enumeration order.
    """

    n: int
    family: MatchingFamily
    alice_table: tuple[int, ...]
    bob_table: tuple[tuple[tuple[int, int], int], ...]

    variant = GameVariant.HM_NONLOCAL
    shared = ConstantShared()

    def __post_init__(self):
        members = self.family.enumerate()
        if len(self.alice_table) != 1 << self.n:
            raise ValueError("alice table must cover {0,1}^n")
        if any(not 0 <= a < self.n for a in self.alice_table):
            raise ValueError("alice outputs must be log2(n)-bit strings")
        if len(self.bob_table) != len(members):
            raise ValueError("bob table must cover the matching family")
        for matching, (edge, b) in zip(members, self.bob_table):
            if not matching.contains_edge(*edge):
                raise ValueError(f"bob entry {edge} is not an edge of its matching")
            if not 0 <= b < self.n:
                raise ValueError("bob strings must be log2(n)-bit strings")
        object.__setattr__(self, "_index",
                           {m: t for t, m in enumerate(members)})

    @property
    def name(self) -> str:
        return "table"

    def bob_entry(self, matching: Matching) -> tuple[tuple[int, int], int]:
        return self.bob_table[self._index[matching]]

    def alice_rule(self, x: int, r) -> FiniteDistribution:
        return FiniteDistribution.point_mass(self.alice_table[x])

    def bob_rule(self, matching: Matching, r) -> FiniteDistribution:
        return FiniteDistribution.point_mass(self.bob_entry(matching))

    def outcome(self, a, bob_out):
        edge, b = bob_out
        return NonlocalOutcome(a=a, edge=edge, b=b)

    def play(self, x: int, matching: Matching, rng=None):
        edge, b = self.bob_entry(matching)
        return NonlocalOutcome(a=self.alice_table[x], edge=edge, b=b)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "family": self.family.kind.value,
            "alice": list(self.alice_table),
            "bob": [[e[0], e[1], b] for (e, b) in self.bob_table],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DeterministicStrategyPair":
        family = MatchingFamily(data["n"], FamilyKind(data.get("family", "full")))
        bob = tuple(((i, j), b) for i, j, b in data["bob"])
        return cls(data["n"], family, tuple(data["alice"]), bob)


def random_deterministic_pair(n: int, rng: np.random.Generator,
                              family: MatchingFamily | None = None) -> DeterministicStrategyPair:
    family = family or MatchingFamily(n, FamilyKind.FULL)
    members = family.enumerate()
    alice = tuple(int(a) for a in rng.integers(0, n, size=1 << n))
    bob = []
    for matching in members:
        edge = matching.edges[int(rng.integers(len(matching.edges)))]
        bob.append((edge, int(rng.integers(n))))
    return DeterministicStrategyPair(n, family, alice, tuple(bob))


# ---------------------------------------------------------------------------
# transforms between the settings

def solve_b_for_parity(v: int, s: int) -> int:
    """The string v * e_t, t the lowest set bit of s; satisfies b.s = v."""
    if v not in (0, 1):
        raise ValueError("v must be a bit")
    return lowest_set_bit(s) if v else 0


class SimulatedCommStrategy(NonlocalStrategy):
    """Play a communication protocol without communicating.

    A shared uniform c-bit string r stands in for the message. When r equals
    the message Alice would have sent she outputs the all-zero string, so
    Bob's b with b.(i^j) = v realizes the protocol's answer; otherwise she
    outputs a uniformly random string (private randomness) and the round wins
    with probability exactly 1/2. The overall value is therefore
    p/2^c + (1 - 1/2^c)/2 with p the protocol's winning probability.
    """

    def __init__(self, protocol: CommProtocol):
        self.n = protocol.n
        self.c = protocol.c
        self.protocol = protocol
        self.shared = UniformShared(tuple(range(1 << protocol.c)))
        self.name = f"simulated:{protocol.name}"

    def alice_rule(self, x: int, r) -> FiniteDistribution:
        if r == self.protocol.message_rule(x):
            return FiniteDistribution.point_mass(0)
        return FiniteDistribution.uniform(tuple(range(self.n)))

    def bob_rule(self, matching: Matching, r) -> FiniteDistribution:
        def to_nonlocal(edge_v):
            (i, j), v = edge_v
            return ((i, j), solve_b_for_parity(v, i ^ j))
        return self.protocol.decision_rule(r, matching).map(to_nonlocal)


def nonlocal_from_comm(protocol: CommProtocol, c: int | None = None) -> SimulatedCommStrategy:
    """Shared-randomness simulation of a c-bit one-way protocol."""
    if c is not None and c != protocol.c:
        raise ValueError(f"protocol sends {protocol.c} bits, not {c}")
    return SimulatedCommStrategy(protocol)


class ReducedCommProtocol(CommProtocol):
    """One-way protocol obtained from a deterministic nonlocal strategy.

    Alice sends her would-be output a (log2 n bits); Bob plays his table and
    reports the edge with v = (a^b).(i^j). Wins exactly when the nonlocal
    strategy wins, so the value is preserved.
    """

    def __init__(self, pair: DeterministicStrategyPair):
        self.n = pair.n
        self.c = log2_strict(pair.n)
        self.pair = pair
        self.name = "reduced"

    def message_rule(self, x: int) -> int:
        return self.pair.alice_table[x]

    def decision_rule(self, m: int, matching: Matching) -> FiniteDistribution:
        (i, j), b = self.pair.bob_entry(matching)
        return FiniteDistribution.point_mass(((i, j), dot_mod2(m ^ b, i ^ j)))


def comm_from_nonlocal(pair: DeterministicStrategyPair) -> ReducedCommProtocol:
    """Turn a deterministic nonlocal strategy into a log2(n)-bit protocol.

    Randomized strategies reduce the same way after fixing the shared string,
    so the deterministic case carries the general statement by convexity.
    """
    return ReducedCommProtocol(pair)


# ---------------------------------------------------------------------------
# Grothendieck-style rounding

@dataclass(frozen=True)
class GrothendieckVectors:
    """The unit-vector system and bilinear-form entry behind the rounding."""

    v_x: np.ndarray
    v_y: np.ndarray
    n_entry: Fraction


def grothendieck_vectors(x: int, matching: Matching, i: int,
                         weight: Fraction = Fraction(1)) -> GrothendieckVectors:
    """Unit vectors for Alice's input and Bob's matching at anchor index i.

    v_x has coordinates (-1)^(x_i ^ x_k)/sqrt(n); v_y is the standard basis
    vector of i's partner j; the bilinear entry is weight * (-1)^(x_i ^ x_j),
    so <v_x, v_y> = (-1)^(x_i ^ x_j)/sqrt(n).
    """
    n = matching.n
    j = matching.partner(i)
    signs = np.array([1 - 2 * edge_parity(x, i, k) for k in range(n)], dtype=float)
    v_x = signs / math.sqrt(n)
    v_y = np.zeros(n)
    v_y[j] = 1.0
    return GrothendieckVectors(v_x=v_x, v_y=v_y,
                               n_entry=weight * (1 - 2 * edge_parity(x, i, j)))


class HyperplaneRoundingStrategy(NonlocalStrategy):
    """Round the unit-vector system with a shared Gaussian hyperplane.

    Shared randomness: an anchor index i uniform in [n], a position r uniform
    in [log2 n], and a standard Gaussian g in R^n. Alice rounds v_x to the
    sign of <g, v_x> and outputs that bit at position r; Bob reports i's edge
    and, when i^j has bit r set, rounds v_y the same way, which makes
    (a^b).(i^j) equal the XOR of the two rounded bits; otherwise he answers
    uniformly. sign(0) resolves to +1. Valid for every input distribution.
    """

    def __init__(self, n: int, distribution=None):
        self.n = n
        self.log_n = log2_strict(n)
        self.shared = ProductShared((
            UniformShared(tuple(range(n))),
            UniformShared(tuple(range(self.log_n))),
            GaussianShared(n),
        ))
        self.name = "groth"

    @staticmethod
    def _sign_bit(value: float) -> int:
        return 0 if value >= 0 else 1

    def alice_rule(self, x: int, r) -> FiniteDistribution:
        anchor, pos, g = r
        score = sum((1 - 2 * edge_parity(x, anchor, k)) * g[k] for k in range(self.n))
        return FiniteDistribution.point_mass(self._sign_bit(score) << pos)

    def bob_rule(self, matching: Matching, r) -> FiniteDistribution:
        anchor, pos, g = r
        j = matching.partner(anchor)
        edge = (anchor, j) if anchor < j else (j, anchor)
        if bit(anchor ^ j, pos):
            return FiniteDistribution.point_mass((edge, self._sign_bit(g[j]) << pos))
        return FiniteDistribution.uniform(tuple((edge, b) for b in range(self.n)))

    # vectorized fast path for uniform inputs on the full family
    def play_batch(self, rng: np.random.Generator, count: int):
        n = self.n
        rows = np.arange(count)
        xs = rng.integers(0, 2, size=(count, n), dtype=np.int8)
        pairs = sample_matchings_array(n, count, rng)
        anchor = rng.integers(0, n, size=count)
        pos = rng.integers(0, self.log_n, size=count)
        g = rng.standard_normal((count, n))
        b_rand = rng.integers(0, n, size=count)

        partner = np.empty((count, n), dtype=np.int64)
        partner[rows[:, None], pairs[:, :, 0]] = pairs[:, :, 1]
        partner[rows[:, None], pairs[:, :, 1]] = pairs[:, :, 0]
        j = partner[rows, anchor]
        s = anchor ^ j
        pos_set = ((s >> pos) & 1).astype(bool)

        x_anchor = xs[rows, anchor]
        signs = 1 - 2 * (xs ^ x_anchor[:, None])
        alice_bit = ((signs * g).sum(axis=1) < 0).astype(np.int8)
        bob_bit = (g[rows, j] < 0).astype(np.int8)
        parity = x_anchor ^ xs[rows, j]

        parity_table = np.array([v.bit_count() & 1 for v in range(n)], dtype=np.int8)
        win_aligned = (alice_bit ^ bob_bit) == parity
        win_fallback = parity_table[b_rand & s] == parity
        wins = np.where(pos_set, win_aligned, win_fallback)
        return wins, {"position-aligned": pos_set}


def hyperplane_rounding_strategy(n: int, distribution=None) -> HyperplaneRoundingStrategy:
    return HyperplaneRoundingStrategy(n, distribution)


def rounding_identity_pairs(n: int = 16) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Ten fixed unit-vector pairs for checking the arcsin rounding identity.

    Five structured pairs come from the game's own vector system (inner
    products +-1/sqrt(n)); five more are deterministic pseudorandom unit
    vectors spanning a range of inner products.
    """
    matching = Matching.of([(2 * t, 2 * t + 1) for t in range(n // 2)])
    pairs = []
    for x in (0, 1, (1 << n) - 1, 0x6666 % (1 << n), 37 % (1 << n)):
        vecs = grothendieck_vectors(x, matching, 0)
        pairs.append((vecs.v_x, vecs.v_y))
    rng = np.random.default_rng(20240)
    for _ in range(5):
        u = rng.standard_normal(n)
        v = rng.standard_normal(n)
        pairs.append((u / np.linalg.norm(u), v / np.linalg.norm(v)))
    return tuple(pairs)


def rounding_identity_check(pairs=None, samples: int = 1_000_000, seed: int = 0) -> list[dict]:
    """Monte Carlo check of E[sign<g,u> sign<g,v>] = (2/pi) arcsin<u,v>."""
    pairs = rounding_identity_pairs() if pairs is None else pairs
    out = []
    ss = np.random.SeedSequence(seed)
    for child, (u, v) in zip(ss.spawn(len(pairs)), pairs):
        rng = np.random.default_rng(child)
        inner = float(np.dot(u, v))
        expected = (2 / math.pi) * math.asin(max(-1.0, min(1.0, inner)))
        agree = 0
        done = 0
        chunk = 1 << 17
        dim = len(u)
        while done < samples:
            size = min(chunk, samples - done)
            g = rng.standard_normal((size, dim))
            su = (g @ u) >= 0
            sv = (g @ v) >= 0
            agree += int((su == sv).sum())
            done += size
        est = 2 * agree / samples - 1
        stderr = 2 * math.sqrt(max((agree / samples) * (1 - agree / samples), 1e-12) / samples)
        out.append({
            "inner_product": inner,
            "expected": expected,
            "estimate": est,
            "stderr": stderr,
            "z": (est - expected) / stderr if stderr else 0.0,
            "samples": samples,
        })
    return out
