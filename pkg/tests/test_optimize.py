from fractions import Fraction

import pytest

from hidden_matching.classical import nonlocal_from_comm, pair_parity_protocol
from hidden_matching.errors import CapExceededError
from hidden_matching.evaluation import exact_win_probability
from hidden_matching.games import GameInstance, GameVariant
from hidden_matching.optimize import (brute_force_classical_value,
                                      local_search_classical_value)

INST4 = GameInstance(4, GameVariant.HM_NONLOCAL)


def test_brute_force_n2_perfect():
    inst = GameInstance(2, GameVariant.HM_NONLOCAL)
    result = brute_force_classical_value(inst)
    assert result.value == 1
    assert result.mode == "exact"


def test_brute_force_n4_golden():
    # golden values pinned by the standalone enumeration oracle: the n = 4
    # nonlocal game is classically winnable with certainty (each matching has
    # a constant edge XOR, and Alice's two output bits can carry the parities
    # of (0,1) and (0,2), whose XOR is forced to match the third matching)
    result = brute_force_classical_value(INST4)
    assert result.value == Fraction(1)
    assert result.stats == {"bob_tables": 512, "optimal_bob_tables": 128}
    assert result.witness.bob_table == (((0, 1), 0), ((0, 2), 0), ((1, 2), 0))
    assert result.witness.alice_table == (0, 3, 1, 2, 2, 1, 3, 0,
                                          0, 3, 1, 2, 2, 1, 3, 0)


def test_brute_force_witness_reevaluates():
    result = brute_force_classical_value(INST4)
    rep = exact_win_probability(INST4, result.witness)
    assert rep.winning_probability == result.value


def test_brute_force_reproducible():
    a = brute_force_classical_value(INST4)
    b = brute_force_classical_value(INST4)
    assert a.value == b.value
    assert a.witness == b.witness


def test_brute_force_cap():
    inst = GameInstance(8, GameVariant.HM_NONLOCAL)
    with pytest.raises(CapExceededError):
        brute_force_classical_value(inst)


def test_local_search_matches_brute_force_n4():
    exact = brute_force_classical_value(INST4)
    for seed in (0, 1, 2):
        search = local_search_classical_value(INST4, restarts=10, seed=seed)
        assert search.mode == "lower-bound"
        assert search.value == exact.value
        rep = exact_win_probability(INST4, search.witness)
        assert rep.winning_probability == search.value


def test_local_search_monotone_trajectories():
    result = local_search_classical_value(INST4, restarts=6, seed=3)
    for trajectory in result.stats["trajectories"]:
        assert trajectory == sorted(trajectory)


def test_local_search_seed_reproducible():
    a = local_search_classical_value(INST4, restarts=5, seed=11)
    b = local_search_classical_value(INST4, restarts=5, seed=11)
    assert a.value == b.value
    assert a.witness == b.witness


def test_local_search_n8_beats_simulated_protocol():
    # the explicit 1-bit strategy (simulated pair-parity protocol) wins 15/28;
    # warm starts are available but random restarts already clear the bar
    inst = GameInstance(8, GameVariant.HM_NONLOCAL)
    sim_value = exact_win_probability(
        inst, nonlocal_from_comm(pair_parity_protocol(8))).winning_probability
    assert sim_value == Fraction(15, 28)
    result = local_search_classical_value(inst, restarts=6, seed=0)
    assert result.value >= sim_value
    assert result.value >= Fraction(1, 2)
    rep = exact_win_probability(inst, result.witness)
    assert rep.winning_probability == result.value


def test_local_search_warm_start():
    exact = brute_force_classical_value(INST4)
    result = local_search_classical_value(
        INST4, restarts=0, seed=0, initial_pairs=(exact.witness,))
    assert result.value == exact.value


def test_rejects_non_nonlocal_variant():
    inst = GameInstance(4, GameVariant.HM_COMM)
    with pytest.raises(ValueError):
        brute_force_classical_value(inst)
