"""Bitstring arithmetic on small integers.

Indices in [0, n) double as bitstrings of length log2(n): bit ``t`` of the
integer is coordinate ``t`` of the string. Alice's n-bit input is likewise an
integer with bit ``i`` holding x_i. All operations here are order-symmetric,
so no MSB/LSB convention leaks out as long as callers stay consistent.
"""


def log2_strict(n: int) -> int:
    """Return log2(n) for a positive power of two, else raise ValueError."""
    if n < 1 or n & (n - 1):
        raise ValueError(f"n must be a positive power of 2, got {n}")
    return n.bit_length() - 1


def bit(x: int, i: int) -> int:
    """Coordinate i of the bitstring encoded by x."""
    return (x >> i) & 1


def xor_index(i: int, j: int) -> int:
    """Bitwise XOR of two indices viewed as equal-length bitstrings."""
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    return i ^ j


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot_mod2(a: int, b: int, width: int | None = None) -> int:
    """Bitwise inner product of a and b modulo 2.

    ``width`` optionally enforces that both strings fit in that many bits,
    the integer analogue of a length check.
    """
    if a < 0 or b < 0:
        raise ValueError("bitstrings must be nonnegative integers")
    if width is not None and (a >> width or b >> width):
        raise ValueError(f"bitstring does not fit in {width} bits")
    return (a & b).bit_count() & 1


def edge_parity(x: int, i: int, j: int) -> int:
    """x_i XOR x_j for an n-bit input x."""
    return ((x >> i) & 1) ^ ((x >> j) & 1)


def lowest_set_bit(s: int) -> int:
    """The value of the lowest set bit of s (s as a bitstring e_t)."""
    if s <= 0:
        raise ValueError("s must be a nonzero bitstring")
    return s & -s


def bits_to_int(bits) -> int:
    """Pack a sequence b_0, b_1, ... into an integer with bit t = b_t."""
    out = 0
    for t, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bits must be 0/1, got {b!r}")
        out |= b << t
    return out


def int_to_bits(x: int, width: int) -> tuple[int, ...]:
    """Unpack x into (b_0, ..., b_{width-1})."""
    if x >> width:
        raise ValueError(f"{x} does not fit in {width} bits")
    return tuple((x >> t) & 1 for t in range(width))
