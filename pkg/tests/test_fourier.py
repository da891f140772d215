import math
from fractions import Fraction

import numpy as np
import pytest

from hidden_matching.classical import (FunctionCommProtocol,
                                       MajorityBlockProtocol,
                                       constant_message_protocol,
                                       random_comm_protocol)
from hidden_matching.distributions import FiniteDistribution
from hidden_matching.errors import CapExceededError
from hidden_matching.fourier import (dyadic_entropy_within, entropy,
                                     fourier_report)
from hidden_matching.matchings import FamilyKind, MatchingFamily


def test_entropy_examples():
    assert entropy([Fraction(1)]) == 0.0
    assert entropy([Fraction(1, 8)] * 8) == 3.0
    assert entropy([Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]) == 1.5
    with pytest.raises(ValueError):
        entropy([0.3, 0.3])
    with pytest.raises(ValueError):
        entropy([Fraction(3, 2), Fraction(-1, 2)])


def test_dyadic_entropy_within():
    assert dyadic_entropy_within([4], 0)            # point mass, H = 0
    assert dyadic_entropy_within([2, 2], 1)         # uniform, H = 1 exactly
    assert not dyadic_entropy_within([1, 1, 1, 1], 1)  # H = 2 > 1
    assert dyadic_entropy_within([1, 1, 1, 1], 2)
    assert dyadic_entropy_within([3, 1], 1)         # H < 1
    assert dyadic_entropy_within([1, 1, 2], 5)      # budget above support size
    with pytest.raises(ValueError):
        dyadic_entropy_within([3], 1)


def test_constant_protocol_has_zero_biases():
    proto = constant_message_protocol(8)
    report = fourier_report(8, proto)
    assert len(report.records) == 1
    rec = report.records[0]
    assert rec.weight == 1
    assert rec.bias_sq_sum == 0
    assert rec.kkl_ratio is None
    assert report.entropy_bits == 0.0
    assert all(report.checks.values())
    assert report.win_probability == Fraction(1, 2)


def test_first_bit_partition_biases_vanish():
    # conditioning on x_0 fixes no pair parity, so every beta is 0
    def decide(m, matching):
        return FiniteDistribution.uniform(
            tuple((e, v) for e in matching.edges for v in (0, 1)))

    proto = FunctionCommProtocol(8, 1, lambda x: x & 1, decide, name="first-bit")
    report = fourier_report(8, proto)
    assert len(report.records) == 2
    for rec in report.records:
        assert rec.weight == Fraction(1, 2)
        assert rec.bias_sq_sum == 0
        assert rec.win_excess == 0
    assert report.entropy_bits == 1.0
    assert all(report.checks.values())


def test_majority_report_n4():
    report = fourier_report(4, MajorityBlockProtocol(4, 2))
    assert all(report.checks.values())
    assert report.win_probability == Fraction(2, 3)
    assert report.win_excess == Fraction(1, 6)
    assert report.family is FamilyKind.FULL


@pytest.mark.parametrize("c", [1, 2, 3])
def test_random_protocols_satisfy_chain(c):
    rng = np.random.default_rng(40 + c)
    for _ in range(6):
        proto = random_comm_protocol(8, c, rng)
        report = fourier_report(8, proto)
        assert all(report.checks.values()), report.checks
        for rec in report.records:
            assert rec.q_sum == 1
            assert rec.q_max <= Fraction(1, 7)
            assert rec.q_sq_sum <= rec.q_max * rec.q_sum


def test_adversarial_partition():
    # one message hoards all inputs but a single x, maximizing the bias of
    # the lonely class; the chain still holds exactly
    def decide(m, matching):
        return FiniteDistribution.point_mass((matching.edges[0], 0))

    proto = FunctionCommProtocol(8, 1, lambda x: 1 if x == 0b10110010 else 0,
                                 decide, name="needle")
    report = fourier_report(8, proto)
    assert all(report.checks.values())
    needle = [r for r in report.records if r.weight == Fraction(1, 256)][0]
    # a singleton class has every |beta| = 1: ordered level-2 mass = n(n-1)
    assert needle.bias_sq_sum == 56
    assert needle.kkl_ratio == math.sqrt(56.0) / 8


def test_bijective_family_q_bound():
    fam = MatchingFamily(8, FamilyKind.BIJECTIVE_XOR)
    rng = np.random.default_rng(77)
    for c in (1, 2):
        proto = random_comm_protocol(8, c, rng, family=fam)
        report = fourier_report(8, proto, family=fam)
        assert report.family is FamilyKind.BIJECTIVE_XOR
        assert all(report.checks.values())
        for rec in report.records:
            assert rec.q_max <= Fraction(2, 8)


def test_mc_mode_runs_and_reports_stderr():
    proto = MajorityBlockProtocol(16, 2)
    report = fourier_report(16, proto, mode="mc", samples=2_000, seed=1)
    assert report.mode == "mc"
    assert set(report.checks) == {"entropy_budget"}
    assert all(rec.q_max_stderr is not None for rec in report.records)
    assert all(rec.q_sum <= 1 for rec in report.records)


def test_bias_cap():
    with pytest.raises(CapExceededError):
        fourier_report(32, constant_message_protocol(32))


def test_protocol_size_mismatch():
    with pytest.raises(ValueError):
        fourier_report(8, MajorityBlockProtocol(4, 2))
