"""Fourier diagnostics of one-way protocols: message weights, pair biases,
output-pair distributions, and the exact inequality chain they satisfy.

For a deterministic message rule, each message m carries the input class
X_m = {x : message(x) = m} with weight p_m = |X_m| / 2^n, the pair bias
beta_{ij} = E_{x in X_m}[(-1)^{x_i + x_j}], and the output-pair distribution
q_m(i, j) = Pr_M[Bob reports (i, j) | m]. Five exact facts tie these to the
protocol's conditional winning excess eps_m (all rational arithmetic):

1. best-guess bound: 2 eps_m <= sum_{i<j} q_m |beta|;
2. Cauchy-Schwarz: (sum q |beta|)^2 <= (sum q^2)(sum beta^2) over i < j;
3. q-norm bound: sum q^2 <= max q <= 1/(n-1) on the full family (2/n on the
   bijective-XOR family);
4. decomposition: the overall winning probability equals
   1/2 + sum_m p_m eps_m;
5. entropy budget: H(p) <= c, checked exactly in integer arithmetic.

The level-2 bias mass sum_{i != j} beta^2 (ordered pairs) is reported along
with the dimensionless ratio sqrt(mass) / log2(1/p_m), the quantity the
Kahn-Kalai-Linial inequality bounds by an absolute constant; the ratio is
reported, never asserted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import bit
from .classical import CommProtocol
from .errors import CapExceededError
from .evaluation import exact_win_probability
from .games import GameInstance, GameVariant
from .matchings import (ENUMERATION_CAP, FamilyKind, Matching, MatchingFamily,
                        sample_matchings_array)

BIAS_CAP = 16  # pair-bias accumulation enumerates 2^n inputs


def entropy(probs) -> float:
    """Shannon entropy in bits, with 0 log(1/0) = 0."""
    ps = [Fraction(p) if not isinstance(p, float) else p for p in probs]
    total = sum(ps)
    if isinstance(total, Fraction):
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
    elif abs(total - 1) > 1e-9:
        raise ValueError(f"probabilities sum to {total}, not 1")
    out = 0.0
    for p in ps:
        if p < 0:
            raise ValueError("negative probability")
        if p > 0:
            out -= float(p) * math.log2(float(p))
    return out


def dyadic_entropy_within(counts, budget_bits: int) -> bool:
    """Exact check that H(k / 2^n) <= budget for integer counts k summing to 2^n.

    H(p) <= c is equivalent to prod k^k >= 2^{(n-c) 2^n}, an integer
    comparison, so no floating-point tolerance is involved.
    """
    total = sum(counts)
    if total <= 0 or total & (total - 1):
        raise ValueError("counts must sum to a power of 2")
    n = total.bit_length() - 1
    exponent = (n - budget_bits) * total
    if exponent <= 0:
        return True
    lhs = 1
    for k in counts:
        if k:
            lhs *= k ** k
    return lhs >= (1 << exponent)


@dataclass(frozen=True)
class MessageRecord:
    """Per-message diagnostics; rational fields are exact."""

    message: int
    weight: Fraction                  # p_m
    win_excess: Fraction              # conditional winning probability - 1/2
    bias_sq_sum: Fraction             # sum over ordered pairs i != j of beta^2
    q_max: Fraction
    q_sum: Fraction
    q_sq_sum: Fraction
    q_abs_bias: Fraction              # sum_{i<j} q(i,j) |beta_{ij}|
    kkl_ratio: float | None           # sqrt(bias_sq_sum) / log2(1/p_m)
    q_max_stderr: float | None = None  # sampled mode: largest per-cell stderr


@dataclass(frozen=True)
class FourierReport:
    n: int
    c: int
    family: FamilyKind
    mode: str
    records: tuple[MessageRecord, ...]
    win_probability: Fraction         # exact, via the evaluator
    win_excess: Fraction              # epsilon = sum p_m eps_m
    entropy_bits: float
    entropy_budget: int
    max_kkl_ratio: float | None
    checks: dict


def _pair_biases(n: int, protocol: CommProtocol):
    """counts[m] and integer bias sums S[m][(i,j)] = sum_{x in X_m} (-1)^{x_i+x_j}."""
    num_m = 1 << protocol.c
    counts = [0] * num_m
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    sums = [dict.fromkeys(pairs, 0) for _ in range(num_m)]
    for x in range(1 << n):
        m = protocol.message_rule(x)
        counts[m] += 1
        row = sums[m]
        for (i, j) in pairs:
            row[(i, j)] += 1 - 2 * (bit(x, i) ^ bit(x, j))
    return counts, pairs, sums


def fourier_report(n: int, protocol: CommProtocol, *,
                   family: MatchingFamily | None = None,
                   enumeration_cap: int = ENUMERATION_CAP,
                   mode: str = "exact",
                   samples: int = 100_000, seed: int = 0) -> FourierReport:
    """Diagnostics and exact inequality chain for a communication protocol.

    ``mode="exact"`` enumerates the matching family (the default cap admits
    n <= 10); ``mode="mc"`` estimates the q cells and win excess from sampled
    matchings and skips the exact checks that depend on them.
    """
    if n > BIAS_CAP:
        raise CapExceededError(f"pair-bias computation needs n <= {BIAS_CAP}")
    if protocol.n != n:
        raise ValueError("protocol size disagrees with n")
    family = family or getattr(protocol, "family", None) or MatchingFamily(n, FamilyKind.FULL)
    q_bound = (Fraction(1, n - 1) if family.kind is FamilyKind.FULL
               else Fraction(2, n))

    counts, pairs, sums = _pair_biases(n, protocol)

    if mode == "exact":
        members = family.enumerate(cap=enumeration_cap)
        member_weight = Fraction(1, len(members))
        q_tables, excess = _exact_q_and_excess(protocol, members, member_weight,
                                               counts, sums)
    elif mode == "mc":
        q_tables, excess = _sampled_q_and_excess(n, protocol, family, counts, sums,
                                                 samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    records = []
    checks = {"best_guess_bound": True, "cauchy_schwarz": True,
              "q_norm_bound": True}
    total_excess = Fraction(0)
    max_ratio = None
    denom = 1 << n
    for m in range(1 << protocol.c):
        if not counts[m]:
            continue
        weight = Fraction(counts[m], denom)
        beta = {pr: Fraction(sums[m][pr], counts[m]) for pr in pairs}
        bias_sq_unordered = sum((b * b for b in beta.values()), Fraction(0))
        bias_sq_ordered = 2 * bias_sq_unordered
        q = q_tables[m]
        q_sum = sum(q.values(), Fraction(0))
        q_sq = sum((v * v for v in q.values()), Fraction(0))
        q_max = max(q.values(), default=Fraction(0))
        q_abs_bias = sum((q.get(pr, Fraction(0)) * abs(beta[pr]) for pr in pairs),
                         Fraction(0))
        eps = excess[m]
        total_excess += weight * eps

        ratio = None
        if weight < 1:
            ratio = math.sqrt(float(bias_sq_ordered)) / math.log2(1 / float(weight))
            max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)

        if mode == "exact":
            if 2 * eps > q_abs_bias:
                checks["best_guess_bound"] = False
            if q_abs_bias * q_abs_bias > q_sq * bias_sq_unordered:
                checks["cauchy_schwarz"] = False
            if not (q_sq <= q_max * q_sum and q_max <= q_bound and q_sum == 1):
                checks["q_norm_bound"] = False

        q_stderr = None
        if mode == "mc":
            q_stderr = max(
                (math.sqrt(float(v) * (1 - float(v)) / samples) for v in q.values()),
                default=0.0)
        records.append(MessageRecord(
            message=m, weight=weight, win_excess=eps,
            bias_sq_sum=bias_sq_ordered, q_max=q_max, q_sum=q_sum,
            q_sq_sum=q_sq, q_abs_bias=q_abs_bias, kkl_ratio=ratio,
            q_max_stderr=q_stderr,
        ))

    entropy_bits = entropy([Fraction(k, denom) for k in counts if k])
    checks["entropy_budget"] = dyadic_entropy_within(
        [k for k in counts if k], protocol.c)

    if mode == "exact":
        instance = GameInstance(n, GameVariant.HM_COMM, family=family)
        evaluated = exact_win_probability(instance, protocol,
                                          enumeration_cap=enumeration_cap)
        win_probability = evaluated.winning_probability
        checks["excess_decomposition"] = (
            win_probability == Fraction(1, 2) + total_excess)
    else:
        win_probability = Fraction(1, 2) + total_excess  # estimate, no cross-check
        checks = {"entropy_budget": checks["entropy_budget"]}

    return FourierReport(
        n=n, c=protocol.c, family=family.kind, mode=mode,
        records=tuple(records), win_probability=win_probability,
        win_excess=total_excess, entropy_bits=entropy_bits,
        entropy_budget=protocol.c, max_kkl_ratio=max_ratio, checks=checks,
    )


def _exact_q_and_excess(protocol, members, member_weight, counts, sums):
    """q_m tables and eps_m from the protocol's actual decisions, exactly.

    Uses the identity Pr_{x in X_m}[v = x_i ^ x_j] = 1/2 + (-1)^v beta_{ij}/2,
    so the excess aggregates decision probabilities against the biases.
    """
    num_m = len(counts)
    q_tables = [dict() for _ in range(num_m)]
    excess = [Fraction(0)] * num_m
    for m in range(num_m):
        if not counts[m]:
            continue
        for matching in members:
            for (edge, v), p in protocol.decision_rule(m, matching).items:
                key = (edge[0], edge[1]) if edge[0] < edge[1] else (edge[1], edge[0])
                q_tables[m][key] = q_tables[m].get(key, Fraction(0)) + member_weight * p
                beta = Fraction(sums[m][key], counts[m])
                excess[m] += member_weight * p * (1 - 2 * v) * beta / 2
    return q_tables, excess


def _sampled_q_and_excess(n, protocol, family, counts, sums, samples, seed):
    rng = np.random.default_rng(seed)
    if family.kind is not FamilyKind.FULL:
        members = family.enumerate()
        draw = [members[int(t)] for t in rng.integers(0, len(members), size=samples)]
    else:
        arr = sample_matchings_array(n, samples, rng)
        draw = [Matching.of([tuple(e) for e in row]) for row in arr]
    num_m = len(counts)
    q_tables = [dict() for _ in range(num_m)]
    excess = [Fraction(0)] * num_m
    w = Fraction(1, samples)
    for matching in draw:
        for m in range(num_m):
            if not counts[m]:
                continue
            for (edge, v), p in protocol.decision_rule(m, matching).items:
                key = (edge[0], edge[1]) if edge[0] < edge[1] else (edge[1], edge[0])
                q_tables[m][key] = q_tables[m].get(key, Fraction(0)) + w * p
                beta = Fraction(sums[m][key], counts[m])
                excess[m] += w * p * (1 - 2 * v) * beta / 2
    return q_tables, excess
