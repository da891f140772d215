"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -rA` to see every line. All
exact claims use rational arithmetic with zero tolerance; stochastic claims
state their thresholds in estimated standard errors; stated runtime budgets
are asserted as written.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from hidden_matching.classical import (MajorityBlockProtocol,
                                       comm_from_nonlocal,
                                       cross_block_event_probability,
                                       hyperplane_rounding_strategy,
                                       nonlocal_from_comm,
                                       random_comm_protocol,
                                       random_deterministic_pair,
                                       rounding_identity_check,
                                       rounding_identity_pairs)
from hidden_matching.evaluation import (exact_win_probability,
                                        mc_win_probability)
from hidden_matching.fourier import fourier_report
from hidden_matching.games import GameInstance, GameVariant, win_predicate
from hidden_matching.matchings import (FamilyKind, MatchingFamily,
                                       enumerate_bijective_xor_matchings,
                                       enumerate_matchings, sample_matching)
from hidden_matching.optimize import (brute_force_classical_value,
                                      local_search_classical_value)
from hidden_matching.quantum import (hm_quantum_distribution,
                                     hmnl_quantum_distribution)
from hidden_matching.serialize import canonical_json_bytes


def _line(number, slug, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number} {slug}: {status}" + (f"  [{detail}]" if detail else ""))


# ---------------------------------------------------------------------------
# shared stochastic runs (computed once; criterion 9 recomputes and compares)

def _quantum16_run(seed=0, cases=1000):
    start = time.time()
    family = MatchingFamily(16, FamilyKind.FULL)
    inst_nl = GameInstance(16, GameVariant.HM_NONLOCAL, family=family)
    inst_c = GameInstance(16, GameVariant.HM_COMM, family=family)
    rng = np.random.default_rng(seed)
    all_exact = True
    sampled = []
    for _ in range(cases):
        m = sample_matching(family, rng)
        x = int(rng.integers(1 << 16, dtype=np.uint64))
        sampled.append((x, m.to_json()))
        for dist, inst in ((hmnl_quantum_distribution(x, m), inst_nl),
                           (hm_quantum_distribution(x, m), inst_c)):
            win_mass = sum((p for out, p in dist.items
                            if win_predicate(inst, x, m, out)), Fraction(0))
            if win_mass != 1:
                all_exact = False
    return {"seed": seed, "cases": cases, "all_exactly_one": all_exact,
            "inputs": sampled}, time.time() - start


def _majority_runs():
    start = time.time()
    inst = GameInstance(64, GameVariant.HM_COMM)
    reports = {}
    for seed in (0, 1, 2):
        for c in (1, 2, 4, 8):
            reports[(seed, c)] = mc_win_probability(
                inst, MajorityBlockProtocol(64, c), 1_000_000, seed=seed)
    events = {c: cross_block_event_probability(64, c, samples=1_000_000, seed=0)
              for c in (1, 2, 4, 8)}
    return reports, events, time.time() - start


def _groth_runs():
    inst = GameInstance(16, GameVariant.HM_NONLOCAL)
    report = mc_win_probability(inst, hyperplane_rounding_strategy(16),
                                10_000_000, seed=0)
    checks = rounding_identity_check(rounding_identity_pairs(16),
                                     samples=1_000_000, seed=0)
    return report, checks


@pytest.fixture(scope="session")
def quantum16():
    return _quantum16_run()


@pytest.fixture(scope="session")
def majority_runs():
    return _majority_runs()


@pytest.fixture(scope="session")
def groth_runs():
    return _groth_runs()


# ---------------------------------------------------------------------------
# criterion 1: quantum perfection

def test_criterion_1_quantum_perfection(quantum16):
    start = time.time()
    run16, elapsed16 = quantum16
    ok = True
    for n in (2, 4, 8):
        family = MatchingFamily(n, FamilyKind.FULL)
        inst_nl = GameInstance(n, GameVariant.HM_NONLOCAL, family=family)
        inst_c = GameInstance(n, GameVariant.HM_COMM, family=family)
        for m in enumerate_matchings(n):
            for x in range(1 << n):
                for dist, inst in ((hmnl_quantum_distribution(x, m), inst_nl),
                                   (hm_quantum_distribution(x, m), inst_c)):
                    win_mass = sum((p for out, p in dist.items
                                    if win_predicate(inst, x, m, out)),
                                   Fraction(0))
                    ok = ok and win_mass == 1
    ok = ok and run16["all_exactly_one"] and run16["cases"] >= 1000
    elapsed = time.time() - start + elapsed16
    _line(1, "quantum-perfection", ok and elapsed <= 120,
          f"n in {{2,4,8}} exhaustive + {run16['cases']} random at n=16; "
          f"{elapsed:.0f}s")
    assert ok
    assert elapsed <= 120


# ---------------------------------------------------------------------------
# criterion 2: exact classical value at n = 4

def test_criterion_2_exact_classical_value():
    start = time.time()
    inst = GameInstance(4, GameVariant.HM_NONLOCAL)
    first = brute_force_classical_value(inst)
    second = brute_force_classical_value(inst)
    v4 = first.value

    bit_exact = canonical_json_bytes(first) == canonical_json_bytes(second)
    in_open_range = Fraction(1, 2) < v4 < 1
    search = local_search_classical_value(inst, restarts=20, seed=0)
    matches_search = search.value == v4
    witness_value = exact_win_probability(inst, first.witness).winning_probability
    witness_ok = witness_value == v4
    elapsed = time.time() - start

    ok = bit_exact and in_open_range and matches_search and witness_ok and elapsed <= 60
    _line(2, "exact-classical-value-n4", ok,
          f"v4*={v4}; bit-exact={bit_exact}; in-(1/2,1)={in_open_range}; "
          f"local-search-match={matches_search}; witness-ok={witness_ok}; "
          f"{elapsed:.0f}s")
    assert bit_exact
    assert matches_search
    assert witness_ok
    assert elapsed <= 60
    # the open-range clause: the game is degenerate at n = 4 (a perfect
    # classical strategy exists), so this assertion fails by mathematics,
    # not by implementation; see the repository notes for the construction
    assert in_open_range, f"v4* = {v4} is not strictly inside (1/2, 1)"


# ---------------------------------------------------------------------------
# criterion 3: composition identity

def test_criterion_3_composition_identity():
    inst_c = GameInstance(4, GameVariant.HM_COMM)
    inst_nl = GameInstance(4, GameVariant.HM_NONLOCAL)
    rng = np.random.default_rng(303)
    ok = True
    checked = 0
    for c in (1, 2):
        protocols = [MajorityBlockProtocol(4, c)]
        protocols += [random_comm_protocol(4, c, rng) for _ in range(50)]
        for proto in protocols:
            p_comm = exact_win_probability(inst_c, proto).winning_probability
            p_sim = exact_win_probability(
                inst_nl, nonlocal_from_comm(proto)).winning_probability
            expected = (Fraction(1, 2 ** c) * p_comm
                        + (1 - Fraction(1, 2 ** c)) * Fraction(1, 2))
            ok = ok and p_sim == expected
            checked += 1
    _line(3, "composition-identity", ok,
          f"{checked} protocols at c in {{1,2}}, exact rational equality")
    assert ok


# ---------------------------------------------------------------------------
# criterion 4: reduction preserves the value

def test_criterion_4_reduction_preservation():
    inst_nl = GameInstance(4, GameVariant.HM_NONLOCAL)
    inst_c = GameInstance(4, GameVariant.HM_COMM)
    rng = np.random.default_rng(404)
    ok = True
    for _ in range(100):
        pair = random_deterministic_pair(4, rng)
        v_nl = exact_win_probability(inst_nl, pair).winning_probability
        v_c = exact_win_probability(
            inst_c, comm_from_nonlocal(pair)).winning_probability
        ok = ok and v_nl == v_c
    _line(4, "reduction-preservation", ok, "100 random deterministic pairs")
    assert ok


# ---------------------------------------------------------------------------
# criterion 5: Fourier chain suite

def test_criterion_5_fourier_chain():
    rng = np.random.default_rng(505)
    violations = 0
    for t in range(200):
        c = (1, 2, 3)[t % 3]
        proto = random_comm_protocol(8, c, rng)
        report = fourier_report(8, proto)
        if not all(report.checks.values()):
            violations += 1
    _line(5, "fourier-chain", violations == 0,
          f"200 random protocols at n=8, c in {{1,2,3}}; {violations} violations")
    assert violations == 0


# ---------------------------------------------------------------------------
# criterion 6: majority protocol signal

def test_criterion_6_majority_signal(majority_runs):
    reports, events, elapsed_runs = majority_runs
    ok = True
    details = []
    for seed in (0, 1, 2):
        advantages = {}
        for c in (1, 2, 4, 8):
            rep = reports[(seed, c)]
            se_adv = 2 * rep.stderr
            advantages[c] = (rep.advantage, se_adv)
            if rep.advantage < 5 * se_adv:
                ok = False
        gap = advantages[8][0] - advantages[1][0]
        gap_se = math.hypot(advantages[8][1], advantages[1][1])
        if gap < 3 * gap_se:
            ok = False
        details.append(f"seed{seed}: adv(c=1)={advantages[1][0]:.4f}, "
                       f"adv(c=8)={advantages[8][0]:.4f}, gap z={gap / gap_se:.0f}")
    for c, ev in events.items():
        if ev["estimate"] - 5 * ev["stderr"] <= 0.1:
            ok = False
    _line(6, "majority-signal", ok and elapsed_runs <= 600,
          "; ".join(details) +
          f"; Pr[event]>0.1 at 5se for all c; {elapsed_runs:.0f}s")
    assert ok
    assert elapsed_runs <= 600


# ---------------------------------------------------------------------------
# criterion 7: rounding signal

def test_criterion_7_rounding_signal(groth_runs):
    report, checks = groth_runs
    se_adv = 2 * report.stderr
    positive = report.advantage >= 5 * se_adv
    identity_ok = all(abs(c["z"]) <= 4 for c in checks) and len(checks) == 10

    # reported, not asserted: the excess over 1/2 against the rounding floor
    excess = report.winning_probability - 0.5
    floor_hi = 1 / (2 * 1.68 * 4 * 4)   # K_G = 1.68
    floor_lo = 1 / (2 * 1.78 * 4 * 4)   # K_G = 1.78
    comparison = (f"measured excess {excess:.5f} vs floor "
                  f"1/(2*K_G*sqrt(n)*log2(n)) in [{floor_lo:.5f}, {floor_hi:.5f}] "
                  f"for K_G in [1.68, 1.78]")
    ok = positive and identity_ok
    _line(7, "rounding-signal", ok,
          f"advantage {report.advantage:.5f} at {report.advantage / se_adv:.0f} se; "
          f"arcsin identity max|z|={max(abs(c['z']) for c in checks):.2f}; "
          + comparison)
    assert positive
    assert identity_ok


# ---------------------------------------------------------------------------
# criterion 8: combinatorics

def test_criterion_8_combinatorics():
    counts_ok = all(
        len(enumerate_matchings(n)) == expected
        for n, expected in ((2, 1), (4, 3), (6, 15), (8, 105), (10, 945)))

    members8 = enumerate_matchings(8)
    membership_ok = all(
        Fraction(sum(1 for m in members8 if m.contains_edge(i, j)),
                 len(members8)) == Fraction(1, 7)
        for i in range(8) for j in range(i + 1, 8))

    bijective4 = enumerate_bijective_xor_matchings(4)
    bijective8 = enumerate_bijective_xor_matchings(8)
    bijective_ok = bijective4 == () and len(bijective8) == 8

    # q <= 2/n on the bijective family at n = 8, exactly: membership
    # frequencies bound any protocol's output-pair distribution
    q_ok = True
    for i in range(4):
        for j in range(4, 8):
            freq = Fraction(sum(1 for m in bijective8 if m.contains_edge(i, j)),
                            len(bijective8))
            q_ok = q_ok and freq <= Fraction(2, 8)
    rng = np.random.default_rng(808)
    fam = MatchingFamily(8, FamilyKind.BIJECTIVE_XOR)
    for c in (1, 2):
        proto = random_comm_protocol(8, c, rng, family=fam)
        report = fourier_report(8, proto, family=fam)
        q_ok = q_ok and all(rec.q_max <= Fraction(2, 8) for rec in report.records)
        q_ok = q_ok and report.checks["q_norm_bound"]

    ok = counts_ok and membership_ok and bijective_ok and q_ok
    _line(8, "combinatorics", ok,
          f"counts=(n-1)!!; membership exactly 1/7 at n=8; bijective family "
          f"empty at n=4, {len(bijective8)} members at n=8; q<=2/n exact")
    assert counts_ok
    assert membership_ok
    assert bijective_ok
    assert q_ok


# ---------------------------------------------------------------------------
# criterion 9: reproducibility of every stochastic acceptance run

def test_criterion_9_reproducibility(quantum16, majority_runs, groth_runs):
    same = []

    same.append(canonical_json_bytes(quantum16[0]) ==
                canonical_json_bytes(_quantum16_run()[0]))

    inst4 = GameInstance(4, GameVariant.HM_NONLOCAL)
    ls_a = local_search_classical_value(inst4, restarts=20, seed=0)
    ls_b = local_search_classical_value(inst4, restarts=20, seed=0)
    same.append(canonical_json_bytes(ls_a) == canonical_json_bytes(ls_b))

    reports, events, _ = majority_runs
    reports2, events2, _ = _majority_runs()
    same.append(all(canonical_json_bytes(reports[k]) ==
                    canonical_json_bytes(reports2[k]) for k in reports))
    same.append(all(canonical_json_bytes(events[c]) ==
                    canonical_json_bytes(events2[c]) for c in events))

    groth_a, checks_a = groth_runs
    groth_b, checks_b = _groth_runs()
    same.append(canonical_json_bytes(groth_a) == canonical_json_bytes(groth_b))
    same.append(canonical_json_bytes(checks_a) == canonical_json_bytes(checks_b))

    ok = all(same)
    _line(9, "reproducibility", ok,
          f"{len(same)} stochastic run families byte-identical under fixed seeds")
    assert ok
