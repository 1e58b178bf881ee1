"""k-uniform set families over an integer ground set, with bitmask members.

Members are Python-int bitmasks over ground elements {0, ..., n-1}.  A
:class:`SetFamily` stores distinct k-element masks in ascending order; all
types here are immutable after construction and safe to share across
threads.  Families imported from named-element data are re-indexed to dense
integer indices with a stored name table (see :func:`family_from_named`).
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Optional, Sequence

import numpy as np

from .bitset import U64_GROUND_LIMIT, elements_of, mask_from_elements


@dataclass(frozen=True)
class GroundSet:
    """The ground set {0, ..., size-1}."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"ground-set size must be >= 1, got {self.size}")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1


@dataclass(frozen=True)
class Sunflower:
    """A core plus petals whose pairwise intersections all equal the core.

    With a single petal the core is the petal itself; with p >= 2 petals the
    core also equals the intersection of all petals.
    """

    core: int
    petals: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.petals)


class SetFamily:
    """Distinct k-element sets over a common ground set, ascending by mask.

    Duplicate masks passed to the constructor are merged (identity is by
    value); the JSON loader, by contrast, rejects duplicate rows outright.
    """

    __slots__ = ("ground_size", "k", "sets", "_u64")

    def __init__(self, ground_size: int, k: int, sets: Iterable[int]):
        if ground_size < 1:
            raise ValueError(f"ground-set size must be >= 1, got {ground_size}")
        if k < 0:
            raise ValueError(f"set size k must be >= 0, got {k}")
        masks = sorted(set(sets))
        for m in masks:
            if m < 0 or m.bit_length() > ground_size:
                raise ValueError(f"mask {m:#x} does not fit ground set of size {ground_size}")
            if m.bit_count() != k:
                raise ValueError(f"mask {m:#x} has {m.bit_count()} elements, expected k={k}")
        self.ground_size = ground_size
        self.k = k
        self.sets = tuple(masks)
        if ground_size <= U64_GROUND_LIMIT:
            self._u64 = np.fromiter(masks, dtype=np.uint64, count=len(masks))
        else:
            self._u64 = None

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.ground_size)

    def masks_u64(self) -> np.ndarray:
        """Members as a uint64 array (requires ground size <= 63)."""
        if self._u64 is None:
            raise ValueError(f"ground set of size {self.ground_size} exceeds the uint64 kernel limit")
        return self._u64

    def element_rows(self) -> list[list[int]]:
        return [list(elements_of(m)) for m in self.sets]

    @classmethod
    def from_element_rows(cls, ground_size: int, k: int, rows: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(ground_size, k, (mask_from_elements(row) for row in rows))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, mask: int) -> bool:
        return _bisect_contains(self.sets, mask)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.ground_size == other.ground_size
            and self.k == other.k
            and self.sets == other.sets
        )

    def __hash__(self) -> int:
        return hash((self.ground_size, self.k, self.sets))

    def __repr__(self) -> str:
        return f"SetFamily(ground_size={self.ground_size}, k={self.k}, size={len(self.sets)})"


def _bisect_contains(sorted_masks: Sequence[int], mask: int) -> bool:
    i = bisect.bisect_left(sorted_masks, mask)
    return i < len(sorted_masks) and sorted_masks[i] == mask


def intersect(a: int, b: int) -> int:
    """Intersection of two sets over the same ground set (bitwise AND)."""
    return a & b


def is_sunflower(sets: Sequence[int]) -> Optional[Sunflower]:
    """Return the sunflower certified by ``sets``, or None.

    All pairwise intersections must coincide; the common value is the core.
    A single set is accepted as a 1-petal sunflower whose core is the set
    itself.  Raises on empty input or duplicate sets.
    """
    if not sets:
        raise ValueError("is_sunflower needs at least one set")
    if len(set(sets)) != len(sets):
        raise ValueError("duplicate sets passed to is_sunflower")
    if len(sets) == 1:
        return Sunflower(core=sets[0], petals=(sets[0],))
    core = sets[0] & sets[1]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j] != core:
                return None
    return Sunflower(core=core, petals=tuple(sets))


def link(family: SetFamily, t: int) -> SetFamily:
    """The family {S \\ T : S in family, T subset of S}, (k-|T|)-uniform.

    Distinct supersets of T yield distinct differences, so no members merge.
    """
    if t == 0:
        raise ValueError("link requires a non-empty set T")
    size_t = t.bit_count()
    if size_t > family.k:
        raise ValueError(f"|T|={size_t} exceeds family k={family.k}")
    kept = [s & ~t for s in family.sets if s & t == t]
    return SetFamily(family.ground_size, family.k - size_t, kept)


def find_disjoint_sets(family: SetFamily, p: int) -> Optional[list[int]]:
    """First p pairwise-disjoint members, found by exhaustive backtracking.

    Members are scanned in ascending mask order, so the result is
    deterministic; returns None when no p pairwise-disjoint members exist.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    sets = family.sets
    chosen: list[int] = []

    def recurse(start: int, used: int) -> bool:
        if len(chosen) == p:
            return True
        for j in range(start, len(sets)):
            s = sets[j]
            if used & s:
                continue
            chosen.append(s)
            if recurse(j + 1, used | s):
                return True
            chosen.pop()
        return False

    return chosen if recurse(0, 0) else None


# --- JSON family format -----------------------------------------------------
#
# {"ground_set_size": n, "k": k, "sets": [[e1, ..., ek], ...]}
# with 0-based element lists; the writer emits each row sorted ascending.


def family_to_dict(family: SetFamily) -> dict:
    return {
        "ground_set_size": family.ground_size,
        "k": family.k,
        "sets": family.element_rows(),
    }


def family_from_dict(data: dict) -> SetFamily:
    """Strict loader: rejects duplicate rows and wrong-cardinality rows."""
    try:
        ground_size = int(data["ground_set_size"])
        k = int(data["k"])
        rows = data["sets"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed family data: {exc}") from exc
    masks = []
    for row in rows:
        mask = mask_from_elements(int(e) for e in row)
        if mask.bit_count() != k or len(row) != k:
            raise ValueError(f"row {row} does not have cardinality k={k}")
        if mask.bit_length() > ground_size or any(e < 0 for e in row):
            raise ValueError(f"row {row} leaves the ground set of size {ground_size}")
        masks.append(mask)
    if len(set(masks)) != len(masks):
        raise ValueError("duplicate sets in family data")
    return SetFamily(ground_size, k, masks)


def save_family(family: SetFamily, path) -> None:
    Path(path).write_text(json.dumps(family_to_dict(family), sort_keys=True, indent=2) + "\n")


def load_family(path) -> SetFamily:
    return family_from_dict(json.loads(Path(path).read_text()))


def family_from_named(rows: Iterable[Iterable[Hashable]]) -> tuple[SetFamily, tuple[Hashable, ...]]:
    """Re-index named-element sets to dense integer indices.

    Names are assigned indices in order of first appearance; the returned
    table maps index -> name.  All rows must share one cardinality.
    """
    table: dict[Hashable, int] = {}
    masks = []
    sizes = set()
    for row in rows:
        row = list(row)
        sizes.add(len(row))
        mask = 0
        for name in row:
            if name not in table:
                table[name] = len(table)
            mask |= 1 << table[name]
        if mask.bit_count() != len(row):
            raise ValueError(f"row {row} repeats an element")
        masks.append(mask)
    if not masks:
        raise ValueError("no sets given")
    if len(sizes) != 1:
        raise ValueError(f"rows have mixed cardinalities {sorted(sizes)}")
    names = tuple(sorted(table, key=table.get))
    return SetFamily(max(len(table), 1), sizes.pop(), masks), names
