from fractions import Fraction

import numpy as np
import pytest

from hidden_matching.bits import bits_to_int
from hidden_matching.games import (CommOutcome, GameInstance, GameVariant,
                                   NonlocalOutcome, win_predicate)
from hidden_matching.matchings import (FamilyKind, Matching, MatchingFamily,
                                       enumerate_bijective_xor_matchings,
                                       enumerate_matchings, sample_matching)
from hidden_matching.quantum import (QuantumStrategy, hm_quantum_distribution,
                                     hmnl_distribution_by_amplitudes,
                                     hmnl_quantum_distribution,
                                     hmnl_small_output_distribution,
                                     sample_outcome)


def _as_dict(dist):
    return dict(dist.items)


def test_hm_distribution_examples():
    m = Matching.of([(0, 1), (2, 3)])
    d = _as_dict(hm_quantum_distribution(0b0000, m))
    assert d == {CommOutcome(edge=(0, 1), v=0): Fraction(1, 2),
                 CommOutcome(edge=(2, 3), v=0): Fraction(1, 2)}
    m2 = Matching.of([(0, 2), (1, 3)])
    x = bits_to_int([0, 1, 1, 0])
    d2 = _as_dict(hm_quantum_distribution(x, m2))
    assert d2 == {CommOutcome(edge=(0, 2), v=1): Fraction(1, 2),
                  CommOutcome(edge=(1, 3), v=1): Fraction(1, 2)}


def test_hm_distribution_n2():
    m = Matching.of([(0, 1)])
    for x in range(4):
        d = _as_dict(hm_quantum_distribution(x, m))
        assert d == {CommOutcome(edge=(0, 1), v=(x ^ (x >> 1)) & 1): Fraction(1)}


def test_hmnl_distribution_n2_examples():
    m = Matching.of([(0, 1)])
    d = _as_dict(hmnl_quantum_distribution(bits_to_int([0, 1]), m))
    assert d == {NonlocalOutcome(a=0, edge=(0, 1), b=1): Fraction(1, 2),
                 NonlocalOutcome(a=1, edge=(0, 1), b=0): Fraction(1, 2)}
    d0 = _as_dict(hmnl_quantum_distribution(0, m))
    assert d0 == {NonlocalOutcome(a=0, edge=(0, 1), b=0): Fraction(1, 2),
                  NonlocalOutcome(a=1, edge=(0, 1), b=1): Fraction(1, 2)}


@pytest.mark.parametrize("n", [2, 4])
def test_amplitude_cross_check_exhaustive(n):
    for m in enumerate_matchings(n):
        for x in range(1 << n):
            closed = _as_dict(hmnl_quantum_distribution(x, m))
            amps = _as_dict(hmnl_distribution_by_amplitudes(x, m))
            assert closed == amps


def test_amplitude_cross_check_sampled_n8():
    rng = np.random.default_rng(17)
    fam = MatchingFamily(8)
    for _ in range(25):
        m = sample_matching(fam, rng)
        x = int(rng.integers(256))
        assert _as_dict(hmnl_quantum_distribution(x, m)) == \
            _as_dict(hmnl_distribution_by_amplitudes(x, m))


@pytest.mark.parametrize("n", [2, 4, 8])
def test_hmnl_structure(n):
    rng = np.random.default_rng(5)
    fam = MatchingFamily(n)
    for _ in range(6):
        m = sample_matching(fam, rng)
        x = int(rng.integers(1 << n))
        dist = hmnl_quantum_distribution(x, m)
        assert dist.total() == 1
        by_edge = {}
        for out, p in dist.items:
            assert p == Fraction(4, n ** 3)
            by_edge.setdefault(out.edge, []).append((out.a, out.b))
        for edge, pairs in by_edge.items():
            # edge marginal exactly 2/n; (a, b) uniform over n^2/2 solutions
            assert len(pairs) == n * n // 2
            assert len(set(pairs)) == len(pairs)
            assert Fraction(4, n ** 3) * len(pairs) == Fraction(2, n)
        assert set(by_edge) == set(m.edges)


def test_hmnl_support_always_wins_n4():
    inst = GameInstance(4, GameVariant.HM_NONLOCAL)
    for m in enumerate_matchings(4):
        for x in range(16):
            dist = hmnl_quantum_distribution(x, m)
            assert all(win_predicate(inst, x, m, out) for out in dist.support())


def test_small_output_pushforward_n8():
    members = enumerate_bijective_xor_matchings(8)
    inst = GameInstance(8, GameVariant.HM_NONLOCAL_SMALL_OUTPUT)
    rng = np.random.default_rng(0)
    for m in members:
        x = int(rng.integers(256))
        dist = hmnl_small_output_distribution(x, m)
        assert dist.total() == 1
        assert len(dist.items) == 32  # n^2/2
        per_edge = {}
        for out, p in dist.items:
            assert p == Fraction(2, 64)  # 2/n^2
            per_edge[out.xor_value] = per_edge.get(out.xor_value, 0) + 1
            assert win_predicate(inst, x, m, out)
        assert set(per_edge) == set(m.xor_values())
        assert all(v == 8 for v in per_edge.values())  # n outcomes per edge


def test_small_output_rejects_full_matchings():
    m = Matching.of([(0, 1), (2, 3), (4, 5), (6, 7)])
    with pytest.raises(ValueError):
        hmnl_small_output_distribution(0, m)


def test_input_validation():
    m = Matching.of([(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        hm_quantum_distribution(16, m)
    with pytest.raises(ValueError):
        hmnl_quantum_distribution(-1, m)
    with pytest.raises(ValueError):
        hm_quantum_distribution(0, Matching.of([(0, 1), (2, 3), (4, 5)]))  # n=6


def test_sample_outcome():
    m = Matching.of([(0, 1)])
    d = hm_quantum_distribution(2, m)
    rng = np.random.default_rng(1)
    assert sample_outcome(d, rng) == CommOutcome(edge=(0, 1), v=1)

    d4 = hm_quantum_distribution(0, Matching.of([(0, 1), (2, 3)]))
    rng = np.random.default_rng(3)
    trials = 100_000
    first = sum(sample_outcome(d4, rng).edge == (0, 1) for _ in range(trials))
    sigma = (trials * 0.25) ** 0.5
    assert abs(first - trials / 2) <= 4 * sigma

    rng_a, rng_b = np.random.default_rng(8), np.random.default_rng(8)
    seq_a = [sample_outcome(d4, rng_a) for _ in range(50)]
    seq_b = [sample_outcome(d4, rng_b) for _ in range(50)]
    assert seq_a == seq_b


def test_quantum_strategy_play_and_variants():
    rng = np.random.default_rng(0)
    m = enumerate_bijective_xor_matchings(8)[0]
    for variant in GameVariant:
        family = (MatchingFamily(8, FamilyKind.BIJECTIVE_XOR)
                  if variant is GameVariant.HM_NONLOCAL_SMALL_OUTPUT else None)
        inst = GameInstance(8, variant, family=family)
        strat = QuantumStrategy(variant)
        out = strat.play(5, m, rng)
        assert win_predicate(inst, 5, m, out)
