from fractions import Fraction

from hidden_matching.ratio import ratio_report


def test_ratio_n4_exact():
    rep = ratio_report(4)
    assert rep.quantum["winning_probability"] == Fraction(1)
    assert rep.quantum["verification"] == "exhaustive"
    assert rep.classical["mode"] == "exact"
    assert rep.classical["winning_probability"] == Fraction(1)
    # degenerate size: both sides perfect, advantage ratio exactly 1
    assert rep.ratio["kind"] == "exact"
    assert rep.ratio["value"] == Fraction(1)


def test_ratio_n8_lower_bound():
    rep = ratio_report(8, restarts=4, seed=0)
    assert rep.quantum["verification"] == "sampled"
    assert rep.classical["mode"] == "lower-bound"
    assert Fraction(1, 2) < rep.classical["winning_probability"] < 1
    assert rep.ratio["kind"] == "upper-bound"
    adv = rep.classical["advantage"]
    assert rep.ratio["value"] == Fraction(1) / adv


def test_ratio_n16_estimate():
    rep = ratio_report(16, samples=20_000, seed=0, quantum_cases=50)
    assert rep.classical["mode"] == "estimate"
    assert rep.ratio["kind"] == "estimate"
    assert len(rep.classical["candidates"]) == 3
    names = {c["strategy"] for c in rep.classical["candidates"]}
    assert "groth" in names
    assert any(n.startswith("simulated:majority") for n in names)
