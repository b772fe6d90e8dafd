"""Bitmask utilities for faces of simplicial complexes.

A face on the vertex set {1, ..., n} is stored as an integer whose bit
(v - 1) is set exactly when vertex v belongs to the face.  All core
algorithms work on these masks; conversion to sorted vertex tuples happens
only at API boundaries.  Masks require n <= 64 nowhere in particular
(Python ints are unbounded) but the package enforces n <= 64 to keep the
dense-universe assumption honest.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


def face_to_mask(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        bit = 1 << (v - 1)
        if mask & bit:
            raise ValueError(f"duplicate vertex {v} in face")
        mask |= bit
    return mask


def mask_to_face(mask: int) -> tuple[int, ...]:
    return tuple(v + 1 for v in iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield 0-based positions of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def universe_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def subfaces_of_size(mask: int, size: int) -> Iterator[int]:
    """All sub-masks of `mask` with exactly `size` bits set."""
    bits = [1 << b for b in iter_bits(mask)]
    if size > len(bits):
        return
    for combo in combinations(bits, size):
        acc = 0
        for b in combo:
            acc |= b
        yield acc


def iter_submasks(mask: int) -> Iterator[int]:
    """All 2^popcount sub-masks of `mask`, ascending as integers."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask
