import pytest

from hidden_matching.bits import (bit, bits_to_int, dot_mod2, edge_parity,
                                  int_to_bits, log2_strict, lowest_set_bit,
                                  parity, xor_index)


def test_xor_index_examples():
    assert xor_index(5, 5) == 0
    assert xor_index(0, 7) == 7
    # 011 ^ 101 = 110
    assert xor_index(3, 5) == 6


def test_xor_index_group_properties():
    for i in range(16):
        for j in range(16):
            assert xor_index(i, j) == xor_index(j, i)
            assert xor_index(xor_index(i, j), j) == i


def test_dot_mod2_examples():
    assert dot_mod2(0, 0b101) == 0
    assert dot_mod2(0b110, 0b110) == 0
    assert dot_mod2(0b110, 0b100) == 1


def test_dot_mod2_bilinear():
    for a in range(8):
        for s in range(8):
            for t in range(8):
                assert dot_mod2(a, s ^ t) == dot_mod2(a, s) ^ dot_mod2(a, t)


def test_dot_mod2_width_check():
    assert dot_mod2(3, 3, width=2) == 0
    with pytest.raises(ValueError):
        dot_mod2(4, 1, width=2)
    with pytest.raises(ValueError):
        dot_mod2(-1, 1)


def test_log2_strict():
    assert log2_strict(1) == 0
    assert log2_strict(8) == 3
    for bad in (0, 3, 6, -4):
        with pytest.raises(ValueError):
            log2_strict(bad)


def test_bit_helpers():
    x = bits_to_int([1, 0, 1, 1])
    assert x == 0b1101
    assert [bit(x, t) for t in range(4)] == [1, 0, 1, 1]
    assert int_to_bits(x, 4) == (1, 0, 1, 1)
    assert edge_parity(x, 0, 1) == 1
    assert edge_parity(x, 2, 3) == 0
    assert parity(0b1011) == 1
    with pytest.raises(ValueError):
        bits_to_int([2])
    with pytest.raises(ValueError):
        int_to_bits(9, 3)


def test_lowest_set_bit():
    assert lowest_set_bit(0b110) == 0b010
    assert lowest_set_bit(0b100) == 0b100
    assert lowest_set_bit(1) == 1
    with pytest.raises(ValueError):
        lowest_set_bit(0)
