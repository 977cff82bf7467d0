"""Bitmask encoding of subsets of the ground set {1, ..., n}.

Element e corresponds to bit e-1, so a subset is an integer in
range(2**n).  All dense tables in the package (rank functions,
independence flags) are indexed this way.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def set_of(mask: int) -> frozenset[int]:
    return frozenset(iter_elements(mask))


def iter_elements(mask: int) -> Iterator[int]:
    e = 1
    while mask:
        if mask & 1:
            yield e
        mask >>= 1
        e += 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def masks_by_size(n: int) -> list[int]:
    """All subsets of [n] as masks, ordered by cardinality then value."""
    return sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
