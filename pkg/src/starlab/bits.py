"""Bitmask helpers. Subsets of a carrier 0..n-1 are plain Python ints."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        out.append(i)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def from_bool(row: np.ndarray) -> int:
    """Pack a 1-d boolean array into a bitmask (index i -> bit i)."""
    packed = np.packbits(np.asarray(row, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def to_bool(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8 or 1, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:n].astype(bool)


def rows_from_matrix(mat: np.ndarray) -> list[int]:
    return [from_bool(r) for r in mat]


def membership_matrix(n: int) -> np.ndarray:
    """Boolean (2**n, n) matrix whose row k lists the members of subset k."""
    ks = np.arange(1 << n, dtype=np.int64)
    return ((ks[:, None] >> np.arange(n)) & 1).astype(bool)
