"""Bitmask helpers for vertex subsets.

A subset of ``{0, …, n-1}`` is an ``int`` whose bit ``v`` is set when ``v``
belongs to it. k-subsets are ranked by the combinatorial number system,
which coincides with increasing integer order of the masks (colex order).
"""

from math import comb
from typing import Iterator, List, Sequence


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> List[int]:
    return list(iter_bits(mask))


def list_to_bits(vertices: Sequence[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def rank_subset(mask: int) -> int:
    """Combinatorial number system rank: sum of C(c_i, i+1) over sorted members."""
    return sum(comb(v, i + 1) for i, v in enumerate(iter_bits(mask)))


def unrank_subset(rank: int, k: int) -> int:
    """Inverse of :func:`rank_subset` for k-subsets."""
    mask = 0
    for i in range(k, 0, -1):
        v = i - 1
        while comb(v + 1, i) <= rank:
            v += 1
        rank -= comb(v, i)
        mask |= 1 << v
    return mask


def iter_k_subsets(n: int, k: int) -> Iterator[int]:
    """All k-subsets of an n-set in rank order (Gosper's hack)."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def format_subset(mask: int) -> str:
    """Render as ``{0,2,5}``."""
    return "{" + ",".join(str(v) for v in iter_bits(mask)) + "}"
