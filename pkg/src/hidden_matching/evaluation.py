"""Exact and Monte Carlo evaluation of strategies.

Exact mode enumerates inputs, shared randomness, and the finite supports of
the rules' output distributions, producing a rational winning probability.
Monte Carlo mode samples rounds in fixed-size chunks with seeds derived from
one root seed, so the result is byte-identical for a given seed regardless of
how many worker threads map the chunks. Strategies with a `play_batch` method
get a vectorized path when the inputs are uniform over the full family.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .classical import CommProtocol
from .errors import CapExceededError
from .games import CommOutcome, GameInstance, GameVariant, UniformInputs, win_predicate
from .matchings import ENUMERATION_CAP, FamilyKind, Matching

# two-sided 99% normal quantile, Phi^{-1}(0.995)
Z99 = 2.5758293035489004

DEFAULT_MAX_TERMS = 2_000_000
DEFAULT_CHUNK = 1 << 16


@dataclass(frozen=True)
class EvaluationReport:
    """Winning probability of one strategy on one game instance."""

    n: int
    variant: GameVariant
    family: FamilyKind
    strategy: str
    mode: str                      # "exact" | "mc"
    winning_probability: Fraction | float
    advantage: Fraction | float
    conditioning: str | None = None
    samples: int | None = None
    effective_samples: int | None = None
    seed: int | None = None
    stderr: float | None = None
    ci_level: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    batched: bool | None = None


def wilson_interval(wins: int, trials: int, z: float = Z99) -> tuple[float, float]:
    """Two-sided Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return (0.0, 1.0)
    p_hat = wins / trials
    denom = 1 + z * z / trials
    center = (p_hat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p_hat * (1 - p_hat) / trials + (z * z) / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def round_win_probability(instance: GameInstance, strategy, x: int, m: Matching) -> Fraction:
    """Exact winning probability of one round on fixed inputs (x, M)."""
    if hasattr(strategy, "outcome_distribution"):
        dist = strategy.outcome_distribution(x, m)
        return sum((p for out, p in dist.items
                    if win_predicate(instance, x, m, out)), Fraction(0))
    if isinstance(strategy, CommProtocol):
        msg = strategy.message_rule(x)
        total = Fraction(0)
        for (edge, v), p in strategy.decision_rule(msg, m).items:
            if win_predicate(instance, x, m, CommOutcome(edge=edge, v=v)):
                total += p
        return total
    total = Fraction(0)
    for r, p_r in strategy.shared.enumerate():
        for a, p_a in strategy.alice_rule(x, r).items:
            for bob_out, p_b in strategy.bob_rule(m, r).items:
                if win_predicate(instance, x, m, strategy.outcome(a, bob_out)):
                    total += p_r * p_a * p_b
    return total


def _shared_support_size(strategy) -> int:
    shared = getattr(strategy, "shared", None)
    if shared is None:
        return 1
    if not shared.is_discrete():
        raise CapExceededError(
            "strategy uses continuous shared randomness; exact mode unavailable")
    return shared.support_size()


def exact_win_probability(instance: GameInstance, strategy, *,
                          condition: Callable[[int, Matching], bool] | None = None,
                          condition_name: str | None = None,
                          enumeration_cap: int = ENUMERATION_CAP,
                          max_terms: int = DEFAULT_MAX_TERMS) -> EvaluationReport:
    """Full-enumeration rational winning probability.

    With ``condition`` the probability is conditioned on rounds whose inputs
    satisfy the predicate. Raises CapExceededError when the enumeration would
    exceed ``max_terms`` input/shared-randomness combinations or when the
    strategy's shared randomness is continuous.
    """
    terms = (1 << instance.n) * instance.family.size(cap=enumeration_cap)
    terms *= _shared_support_size(strategy)
    if terms > max_terms:
        raise CapExceededError(
            f"exact evaluation would sum over {terms} terms (cap {max_terms})")

    total = Fraction(0)
    mass = Fraction(0)
    for x, m, w in instance.enumerate_inputs(cap=enumeration_cap):
        if condition is not None and not condition(x, m):
            continue
        mass += w
        total += w * round_win_probability(instance, strategy, x, m)
    if condition is not None:
        if mass == 0:
            raise ValueError("conditioning event has probability zero")
        total /= mass
    p = total
    return EvaluationReport(
        n=instance.n, variant=instance.variant, family=instance.family.kind,
        strategy=getattr(strategy, "name", type(strategy).__name__),
        mode="exact", winning_probability=p, advantage=2 * p - 1,
        conditioning=condition_name if condition is not None else None,
    )


def _batch_eligible(instance: GameInstance, strategy) -> bool:
    if not hasattr(strategy, "play_batch"):
        return False
    if not isinstance(instance.distribution, UniformInputs):
        return False
    if instance.family.kind is not FamilyKind.FULL:
        return False
    if getattr(strategy, "n", None) != instance.n:
        return False
    if isinstance(strategy, CommProtocol):
        return instance.variant is GameVariant.HM_COMM
    return getattr(strategy, "variant", None) is instance.variant


def mc_win_probability(instance: GameInstance, strategy, samples: int, seed: int = 0, *,
                       condition: Callable[[int, Matching], bool] | str | None = None,
                       threads: int = 1,
                       chunk: int = DEFAULT_CHUNK) -> EvaluationReport:
    """Monte Carlo estimate with a 99% Wilson interval.

    ``condition`` may be a predicate on (x, M) (per-round path) or, for
    strategies with a vectorized `play_batch`, the name of one of the flags
    the batch reports (e.g. "cross-block-edge"); the estimate is then the
    conditional winning probability.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    use_batch = _batch_eligible(instance, strategy) and not callable(condition)
    if isinstance(condition, str) and not use_batch:
        raise ValueError("string conditions need a strategy with a batch path")

    n_chunks = (samples + chunk - 1) // chunk
    children = np.random.SeedSequence(seed).spawn(n_chunks)

    def run_chunk(k: int) -> tuple[int, int]:
        rng = np.random.default_rng(children[k])
        size = min(chunk, samples - k * chunk)
        if use_batch:
            wins, aux = strategy.play_batch(rng, size)
            if condition is None:
                return int(wins.sum()), size
            mask = aux[condition]
            return int((wins & mask).sum()), int(mask.sum())
        w = 0
        kept = 0
        for _ in range(size):
            x, m = instance.sample_input(rng)
            if condition is not None and not condition(x, m):
                continue
            kept += 1
            out = strategy.play(x, m, rng)
            if win_predicate(instance, x, m, out):
                w += 1
        return w, kept

    if threads > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, range(n_chunks)))
    else:
        results = [run_chunk(k) for k in range(n_chunks)]

    wins = sum(r[0] for r in results)
    kept = sum(r[1] for r in results)
    if kept == 0:
        raise ValueError("no samples satisfied the condition")
    p_hat = wins / kept
    stderr = math.sqrt(p_hat * (1 - p_hat) / kept)
    lo, hi = wilson_interval(wins, kept)
    cond_name = condition if isinstance(condition, str) else (
        getattr(condition, "__name__", "condition") if condition is not None else None)
    return EvaluationReport(
        n=instance.n, variant=instance.variant, family=instance.family.kind,
        strategy=getattr(strategy, "name", type(strategy).__name__),
        mode="mc", winning_probability=p_hat, advantage=2 * p_hat - 1,
        conditioning=cond_name, samples=samples, effective_samples=kept,
        seed=seed, stderr=stderr, ci_level=0.99, ci_low=lo, ci_high=hi,
        batched=use_batch,
    )
