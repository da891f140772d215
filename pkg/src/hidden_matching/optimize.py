"""Classical-value optimization over deterministic strategy pairs.

Brute force enumerates every Bob table (choice of edge and string per
matching) and computes Alice's per-input best response, which is exact
because the classical value is attained by deterministic strategies and the
two tables decouple once one side is fixed. Local search runs the same
best-response steps as an alternating ascent from random tables, giving a
certified lower bound with a re-evaluable witness at sizes where full
enumeration is out of reach.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import dot_mod2, edge_parity
from .classical import DeterministicStrategyPair
from .errors import CapExceededError
from .games import GameInstance, GameVariant, UniformInputs
from .matchings import ENUMERATION_CAP

DEFAULT_TABLE_CAP = 1 << 16
DEFAULT_SWEEP_CAP = 5_000_000


@dataclass(frozen=True)
class ClassicalValueResult:
    mode: str                       # "exact" | "lower-bound"
    value: Fraction
    witness: DeterministicStrategyPair
    stats: dict
    seed: int | None = None


class _PairOptimizer:
    """Best-response machinery shared by brute force and local search.

    Precomputes, per matching, the win bit of every (option, a) pair as a
    function of the relevant edge parity, so sweeps reduce to table lookups
    and integer counting (rational weights only for explicit distributions).
    """

    def __init__(self, instance: GameInstance, enumeration_cap: int = ENUMERATION_CAP):
        if instance.variant is not GameVariant.HM_NONLOCAL:
            raise ValueError("optimization is defined for the nonlocal game")
        self.instance = instance
        self.n = instance.n
        self.members = instance.family.enumerate(cap=enumeration_cap)
        self.uniform = isinstance(instance.distribution, UniformInputs)
        self.num_x = 1 << self.n

        # options[mi] = all (edge, b); win(x) = [dot(a^b, i^j) == x_i^x_j]
        self.options = [
            tuple((e, b) for e in m.edges for b in range(self.n))
            for m in self.members
        ]
        # guess_bit[mi][o][a] = dot(a ^ b, i ^ j)
        self.guess_bit = [
            [[dot_mod2(a ^ b, e[0] ^ e[1]) for a in range(self.n)] for (e, b) in opts]
            for opts in self.options
        ]
        edges = sorted({e for opts in self.options for (e, _) in opts})
        self._edge_id = {e: t for t, e in enumerate(edges)}
        # target parity per distinct edge and input
        self.parity = [
            [edge_parity(x, *e) for x in range(self.num_x)] for e in edges
        ]
        self.opt_edge = [
            [self._edge_id[e] for (e, _) in opts] for opts in self.options
        ]
        if not self.uniform:
            self.weights = [
                [instance.input_weight(x, m) for m in self.members]
                for x in range(self.num_x)
            ]

    @property
    def denominator(self) -> int:
        return self.num_x * len(self.members)

    def sweep_cost(self) -> int:
        return self.num_x * len(self.members) * len(self.options[0])

    def alice_scores(self, bob: list[int]):
        """scores[x][a] = win count (or weight) over matchings, given Bob."""
        n = self.n
        rows = [self.parity[self.opt_edge[mi][o]] for mi, o in enumerate(bob)]
        bits = [self.guess_bit[mi][o] for mi, o in enumerate(bob)]
        if self.uniform:
            return [
                [sum(1 for row, gb in zip(rows, bits) if gb[a] == row[x])
                 for a in range(n)]
                for x in range(self.num_x)
            ]
        return [
            [sum((self.weights[x][mi] for mi, (row, gb) in enumerate(zip(rows, bits))
                  if gb[a] == row[x]), Fraction(0))
             for a in range(n)]
            for x in range(self.num_x)
        ]

    def alice_best_response(self, bob: list[int]) -> tuple[list[int], Fraction]:
        """Optimal Alice table against Bob, with the resulting exact value."""
        scores = self.alice_scores(bob)
        alice = [max(range(self.n), key=lambda a: scores[x][a]) for x in range(self.num_x)]
        if self.uniform:
            value = Fraction(sum(scores[x][alice[x]] for x in range(self.num_x)),
                             self.denominator)
        else:
            value = sum((scores[x][alice[x]] for x in range(self.num_x)), Fraction(0))
        return alice, value

    def bob_best_response(self, alice: list[int]) -> list[int]:
        if self.uniform:
            # counts[e][a][t] = #inputs with Alice answer a and parity t on edge e
            counts = [[[0, 0] for _ in range(self.n)] for _ in self.parity]
            for x in range(self.num_x):
                a = alice[x]
                for eid, row in enumerate(self.parity):
                    counts[eid][a][row[x]] += 1
            bob = []
            for mi, opts in enumerate(self.options):
                best, best_score = 0, -1
                for o in range(len(opts)):
                    gb = self.guess_bit[mi][o]
                    eid = self.opt_edge[mi][o]
                    score = sum(counts[eid][a][gb[a]] for a in range(self.n))
                    if score > best_score:
                        best, best_score = o, score
                bob.append(best)
            return bob
        bob = []
        for mi, opts in enumerate(self.options):
            def score(o):
                gb = self.guess_bit[mi][o]
                eid = self.opt_edge[mi][o]
                row = self.parity[eid]
                return sum((self.weights[x][mi] for x in range(self.num_x)
                            if gb[alice[x]] == row[x]), Fraction(0))
            best = max(range(len(opts)), key=score)
            bob.append(best)
        return bob

    def value(self, alice: list[int], bob: list[int]) -> Fraction:
        scores = self.alice_scores(bob)
        if self.uniform:
            return Fraction(sum(scores[x][alice[x]] for x in range(self.num_x)),
                            self.denominator)
        return sum((scores[x][alice[x]] for x in range(self.num_x)), Fraction(0))

    def pair(self, alice: list[int], bob: list[int]) -> DeterministicStrategyPair:
        table = tuple(self.options[mi][o] for mi, o in enumerate(bob))
        return DeterministicStrategyPair(self.n, self.instance.family,
                                         tuple(alice), table)


def brute_force_classical_value(instance: GameInstance, *,
                                max_tables: int = DEFAULT_TABLE_CAP,
                                enumeration_cap: int = ENUMERATION_CAP) -> ClassicalValueResult:
    """Exact classical value by exhausting Bob tables with Alice best responses.

    Tractable only at desk scale (n = 4 full family: 512 Bob tables); raises
    CapExceededError beyond ``max_tables``.
    """
    opt = _PairOptimizer(instance, enumeration_cap)
    total_tables = 1
    for opts in opt.options:
        total_tables *= len(opts)
    if total_tables > max_tables:
        raise CapExceededError(
            f"brute force would enumerate {total_tables} Bob tables (cap {max_tables})")

    best_value = Fraction(-1)
    best_pair = None
    ties = 0
    for bob in itertools.product(*(range(len(o)) for o in opt.options)):
        alice, value = opt.alice_best_response(list(bob))
        if value > best_value:
            best_value, best_pair, ties = value, (alice, list(bob)), 1
        elif value == best_value:
            ties += 1
    witness = opt.pair(*best_pair)
    return ClassicalValueResult(
        mode="exact", value=best_value, witness=witness,
        stats={"bob_tables": total_tables, "optimal_bob_tables": ties},
    )


def local_search_classical_value(instance: GameInstance, restarts: int = 20,
                                 seed: int = 0, *,
                                 max_sweeps: int = 50,
                                 initial_pairs: tuple[DeterministicStrategyPair, ...] = (),
                                 enumeration_cap: int = ENUMERATION_CAP,
                                 sweep_cap: int = DEFAULT_SWEEP_CAP) -> ClassicalValueResult:
    """Alternating best-response ascent; exact lower bound with witness.

    Each restart draws random tables, then alternates Alice and Bob best
    responses until the value stops improving; the value trajectory is
    nondecreasing by construction. ``initial_pairs`` seeds extra restarts
    from explicit strategies.
    """
    opt = _PairOptimizer(instance, enumeration_cap)
    if opt.sweep_cost() > sweep_cap:
        raise CapExceededError(
            f"one best-response sweep needs {opt.sweep_cost()} operations (cap {sweep_cap})")
    rng = np.random.default_rng(seed)

    starts: list[tuple[list[int], list[int]]] = []
    for pair in initial_pairs:
        alice = list(pair.alice_table)
        bob = []
        for mi, m in enumerate(opt.members):
            entry = pair.bob_entry(m)
            bob.append(opt.options[mi].index(entry))
        starts.append((alice, bob))
    for _ in range(restarts):
        alice = [int(a) for a in rng.integers(0, opt.n, size=opt.num_x)]
        bob = [int(rng.integers(len(opts))) for opts in opt.options]
        starts.append((alice, bob))

    best_value = Fraction(-1)
    best_pair = None
    trajectories = []
    for alice, bob in starts:
        value = opt.value(alice, bob)
        trajectory = [value]
        for _ in range(max_sweeps):
            alice, value_a = opt.alice_best_response(bob)
            trajectory.append(value_a)
            bob = opt.bob_best_response(alice)
            value_b = opt.value(alice, bob)
            trajectory.append(value_b)
            if value_b <= value:
                break
            value = value_b
        final = trajectory[-1]
        trajectories.append(trajectory)
        if final > best_value:
            best_value = final
            best_pair = (alice, bob)
    witness = opt.pair(*best_pair)
    return ClassicalValueResult(
        mode="lower-bound", value=best_value, witness=witness,
        stats={"restarts": len(starts), "trajectories": trajectories},
        seed=seed,
    )
