"""Reflected binary Gray code walks over the Boolean cube."""

from typing import Iterator


def to_gray(i: int) -> int:
    return i ^ (i >> 1)


def from_gray(g: int) -> int:
    i = 0
    while g:
        i ^= g
        g >>= 1
    return i


def gray_walk(n: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(mask, flipped_bit, direction)`` for all 2^n vertices.

    Consecutive masks differ in exactly one bit. The first vertex is 0 with
    ``flipped_bit = -1``; ``direction`` is +1 when the bit was switched on
    and -1 when switched off.
    """
    mask = 0
    yield 0, -1, 0
    for i in range(1, 1 << n):
        bit = (i & -i).bit_length() - 1
        mask ^= 1 << bit
        yield mask, bit, 1 if mask >> bit & 1 else -1
