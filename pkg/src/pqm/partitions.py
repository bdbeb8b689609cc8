"""Set partitions on a finite universe and their lattice operations.

Blocks are stored as integer bitmasks over the universe indices, so the
universe is capped at 64 elements.  Partitions are immutable and kept in a
canonical form (indices ascending inside a block, blocks ordered by their
smallest element), which makes ``==`` and ``hash`` structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import (
    EmptyBlock,
    EmptyList,
    IndexOutOfRange,
    NonExhaustive,
    OverlappingBlocks,
    SizeMismatch,
    UniverseMismatch,
)

MAX_N = 64


@dataclass(frozen=True)
class Universe:
    n: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"universe size must be a positive integer, got {self.n!r}")
        if self.n > MAX_N:
            raise ValueError(f"universe size {self.n} exceeds the bitmask limit {MAX_N}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"u{i}" for i in range(self.n)))
        else:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if len(self.labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(self.labels)}")
        if len(set(self.labels)) != self.n:
            raise ValueError("universe labels must be distinct")

    @classmethod
    def letters(cls, n: int) -> "Universe":
        """Universe labelled a, b, c, ... (falls back to u0.. beyond 26)."""
        if n <= 26:
            return cls(n, tuple(chr(ord("a") + i) for i in range(n)))
        return cls(n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexOutOfRange(f"unknown element label {label!r}") from None


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class _DisjointSets:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def component_masks(self) -> list[int]:
        groups: dict[int, int] = {}
        for i in range(len(self.parent)):
            r = self.find(i)
            groups[r] = groups.get(r, 0) | (1 << i)
        return list(groups.values())


def components(n: int, links: Iterable[tuple[int, int]]) -> list[int]:
    """Connected components of a graph on ``range(n)`` as bitmasks."""
    ds = _DisjointSets(n)
    for a, b in links:
        ds.union(a, b)
    return ds.component_masks()


class Partition:
    """A partition of ``range(universe.n)`` into non-empty disjoint blocks."""

    __slots__ = ("universe", "masks", "_block_of")

    def __init__(self, universe: Universe, masks: Iterable[int]):
        # trusted constructor: callers must pass a valid family of masks
        self.universe = universe
        self.masks = tuple(sorted(masks, key=_lowest_bit))
        block_of = [0] * universe.n
        for j, m in enumerate(self.masks):
            for i in indices_of(m):
                block_of[i] = j
        self._block_of = tuple(block_of)

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(indices_of(m) for m in self.masks)

    def block_of(self, i: int) -> int:
        """Index of the block containing element ``i``."""
        return self._block_of[i]

    def same_block(self, i: int, k: int) -> bool:
        return self._block_of[i] == self._block_of[k]

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.universe == other.universe and self.masks == other.masks

    def __hash__(self):
        return hash((self.universe, self.masks))

    def __repr__(self):
        return f"Partition({format_partition(self)!r})"

    def __str__(self):
        return format_partition(self)


def make_partition(universe: Universe, blocks: Iterable[Iterable[int]]) -> Partition:
    seen = 0
    masks = []
    for block in blocks:
        block = list(block)
        if not block:
            raise EmptyBlock("partition blocks must be non-empty")
        m = 0
        for i in block:
            if not isinstance(i, int) or not 0 <= i < universe.n:
                raise IndexOutOfRange(f"index {i!r} outside universe of size {universe.n}")
            m |= 1 << i
        if m & seen:
            dup = indices_of(m & seen)
            raise OverlappingBlocks(f"elements {list(dup)} appear in more than one block")
        seen |= m
        masks.append(m)
    if seen != universe.full_mask:
        missing = indices_of(universe.full_mask & ~seen)
        raise NonExhaustive(f"elements {list(missing)} are not covered by any block")
    return Partition(universe, masks)


def discrete(universe: Universe) -> Partition:
    """The top 1_U: all singletons."""
    return Partition(universe, [1 << i for i in range(universe.n)])


def indiscrete(universe: Universe) -> Partition:
    """The bottom 0_U: a single block."""
    return Partition(universe, [universe.full_mask])


def _check_same(p: Partition, q: Partition) -> None:
    if p.universe != q.universe:
        raise UniverseMismatch("partitions live on different universes")


def ditset(p: Partition) -> frozenset[tuple[int, int]]:
    """Ordered pairs of elements lying in different blocks."""
    n = p.n
    return frozenset(
        (i, k) for i in range(n) for k in range(n) if not p.same_block(i, k)
    )


def inditset(p: Partition) -> frozenset[tuple[int, int]]:
    """Ordered pairs in the same block (the equivalence relation of ``p``)."""
    n = p.n
    return frozenset((i, k) for i in range(n) for k in range(n) if p.same_block(i, k))


def refines(coarse: Partition, fine: Partition) -> bool:
    """True iff every block of ``fine`` sits inside a block of ``coarse``."""
    _check_same(coarse, fine)
    return all(any(b & ~c == 0 for c in coarse.masks) for b in fine.masks)


def join(p: Partition, q: Partition) -> Partition:
    _check_same(p, q)
    return Partition(p.universe, [b & c for b in p.masks for c in q.masks if b & c])


def meet(p: Partition, q: Partition) -> Partition:
    _check_same(p, q)
    links = []
    for m in p.masks + q.masks:
        idx = indices_of(m)
        links.extend((idx[0], i) for i in idx[1:])
    return Partition(p.universe, components(p.n, links))


def join_all(ps: Sequence[Partition]) -> Partition:
    if not ps:
        raise EmptyList("need at least one partition")
    return reduce(join, ps)


def is_complete(ps: Sequence[Partition]) -> bool:
    """Whether the partitions jointly distinguish every pair of elements."""
    return join_all(ps) == discrete(ps[0].universe)


@dataclass(frozen=True)
class Attribute:
    """A function from the universe to value tokens (rationals or labels)."""

    universe: Universe
    values: tuple[Hashable, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.universe.n:
            raise SizeMismatch(
                f"attribute has {len(self.values)} values for a universe of size {self.universe.n}"
            )
        for v in self.values:
            if isinstance(v, float):
                raise TypeError("attribute values must be exact (int, Fraction or str), not float")


def partition_from_attribute(f: Attribute) -> Partition:
    groups: dict[Hashable, int] = {}
    for i, v in enumerate(f.values):
        groups[v] = groups.get(v, 0) | (1 << i)
    return Partition(f.universe, groups.values())


def all_partitions(universe: Universe) -> Iterator[Partition]:
    """Every partition of the universe (Bell-number many), via restricted growth strings."""
    n = universe.n

    def grow(prefix: list[int], top: int):
        if len(prefix) == n:
            masks = [0] * (top + 1)
            for i, b in enumerate(prefix):
                masks[b] |= 1 << i
            yield Partition(universe, masks)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    yield from grow([0], 0)


# ---- text syntax -----------------------------------------------------------


def format_partition(p: Partition) -> str:
    labels = p.universe.labels
    sep = "" if all(len(s) == 1 for s in labels) else ","
    return "|".join(sep.join(labels[i] for i in block) for block in p.blocks)


def parse_partition(text: str, universe: Universe) -> Partition:
    """Parse ``"ac|bd"`` style text.

    Blocks are separated by ``|``.  Inside a block, elements are separated by
    commas; a block without commas is split into characters when the universe
    uses single-character labels.  Bare integers are accepted as indices.
    """
    text = text.strip().strip("{}")
    single = all(len(s) == 1 for s in universe.labels)
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if "," in chunk:
            tokens = [t.strip() for t in chunk.split(",") if t.strip()]
        elif single:
            tokens = list(chunk)
        else:
            tokens = [chunk] if chunk else []
        blocks.append([_token_index(t, universe) for t in tokens])
    return make_partition(universe, blocks)


def _token_index(token: str, universe: Universe) -> int:
    if token in universe.labels:
        return universe.labels.index(token)
    if token.isdigit():
        return int(token)
    raise IndexOutOfRange(f"unknown element {token!r}")


# ---- JSON ------------------------------------------------------------------


def partition_to_json(p: Partition) -> dict:
    return {"n": p.n, "labels": list(p.universe.labels), "blocks": [list(b) for b in p.blocks]}


def partition_from_json(obj: dict) -> Partition:
    universe = Universe(int(obj["n"]), tuple(obj.get("labels") or ()))
    return make_partition(universe, obj["blocks"])


def attribute_to_json(f: Attribute) -> dict:
    from .serialize import value_to_json

    return {"n": f.universe.n, "values": [value_to_json(v) for v in f.values]}


def attribute_from_json(obj: dict, universe: Universe | None = None) -> Attribute:
    from .serialize import value_from_json

    universe = universe or Universe(int(obj["n"]), tuple(obj.get("labels") or ()))
    return Attribute(universe, tuple(value_from_json(v) for v in obj["values"]))

