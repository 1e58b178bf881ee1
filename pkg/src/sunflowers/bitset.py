"""Bit-vector sets: small integer sets packed into Python ints.

Bit i set means ground element i is present.  Python ints are arbitrary
width, so any ground-set size is representable; the numpy kernels elsewhere
additionally require masks to fit in a uint64 lane.
"""

from __future__ import annotations

from typing import Iterable, Iterator

# numpy kernels pack one set per uint64 lane; wider masks stay Python ints
U64_GROUND_LIMIT = 63


def mask_from_elements(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def iter_submasks(mask: int) -> Iterator[int]:
    """All non-empty submasks of ``mask``, ``mask`` itself first."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask
