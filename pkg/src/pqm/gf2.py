"""The powerset of a finite set as the vector space GF(2)^n.

A vector is the characteristic bitmask of a subset and vector addition is
symmetric difference.  Attributes defined on a basis of this space give
direct-sum decompositions, and two bases can give conjugate decompositions,
i.e. ones with no common nonzero eigenvector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from . import linalg as la
from .dsd import DSD, Classification, Subspace, join_like, kind_of
from .errors import AmbientMismatch, DimensionMismatch, NotADSD, OddDimension, RankDeficient
from .partitions import MAX_N, Partition, Universe, indices_of, make_partition


@dataclass(frozen=True)
class GF2Vector:
    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise DimensionMismatch(f"dimension must be in 1..{MAX_N}")
        if self.bits < 0 or self.bits >> self.n:
            raise DimensionMismatch(f"bitmask {self.bits:#x} does not fit in {self.n} bits")

    @classmethod
    def from_indices(cls, n: int, indices) -> "GF2Vector":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return cls(n, bits)

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        if self.n != other.n:
            raise DimensionMismatch("vectors have different dimensions")
        return GF2Vector(self.n, self.bits ^ other.bits)

    def indices(self) -> tuple[int, ...]:
        return indices_of(self.bits)

    def labels(self, universe: Universe) -> list[str]:
        return [universe.labels[i] for i in self.indices()]


@dataclass(frozen=True)
class GF2Basis:
    n: int
    vectors: tuple[GF2Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.vectors))
        if len(self.vectors) != self.n or any(v.n != self.n for v in self.vectors):
            raise DimensionMismatch(f"a basis of GF(2)^{self.n} needs {self.n} vectors of length {self.n}")
        if la.gf2_rank([v.bits for v in self.vectors]) != self.n:
            raise RankDeficient("vectors are linearly dependent over GF(2)")

    @property
    def masks(self) -> list[int]:
        return [v.bits for v in self.vectors]


def standard_basis(n: int) -> GF2Basis:
    """The U-basis of singletons."""
    return GF2Basis(n, tuple(GF2Vector(n, 1 << i) for i in range(n)))


def hat_basis(n: int) -> GF2Basis:
    """The conjugate basis of complements U - {u_i}; a basis only for even n."""
    if n % 2:
        raise OddDimension(f"the complements of singletons are dependent for odd n={n}")
    full = (1 << n) - 1
    return GF2Basis(n, tuple(GF2Vector(n, full ^ (1 << i)) for i in range(n)))


def complement_rank(n: int) -> int:
    full = (1 << n) - 1
    return la.gf2_rank([full ^ (1 << i) for i in range(n)])


def as_basis(basis) -> GF2Basis:
    if isinstance(basis, GF2Basis):
        return basis
    masks = [v.bits if isinstance(v, GF2Vector) else int(v) for v in basis]
    n = len(masks)
    if la.gf2_rank(masks) != n:
        raise RankDeficient("vectors are linearly dependent over GF(2)")
    return GF2Basis(n, tuple(GF2Vector(n, m) for m in masks))


def dsd_from_gf2_attribute(basis, values: Sequence[Hashable]) -> DSD:
    """One part per distinct value, spanned by the basis vectors carrying it.

    Parts are expressed in the computational (U) basis.
    """
    basis = as_basis(basis)
    if len(values) != basis.n:
        raise DimensionMismatch(f"{len(values)} values for {basis.n} basis vectors")
    groups: dict[Hashable, list[int]] = {}
    for v, mask in zip(values, basis.masks):
        groups.setdefault(v, []).append(mask)
    parts = tuple(Subspace.span("gf2", basis.n, masks) for masks in groups.values())
    return DSD(parts, tuple(groups))


def gf2_classify(d1: DSD, d2: DSD) -> Classification:
    if d1.field != "gf2" or d2.field != "gf2":
        raise AmbientMismatch("both decompositions must be over GF(2)")
    if d1.ambient_dim != d2.ambient_dim:
        raise AmbientMismatch("decompositions have different dimensions")
    _, se = join_like(d1, d2)
    return Classification(kind_of(se.dim, d1.ambient_dim), se.dim)


def common_eigenvectors_brute_force(d1: DSD, d2: DSD) -> list[int]:
    """Nonzero vectors lying in some part of d1 and in some part of d2, by enumeration."""
    if d1.ambient_dim > 20:
        raise ValueError("brute-force enumeration is limited to n <= 20")

    def in_some_part(d: DSD) -> set[int]:
        found = set()
        for part in d.parts:
            found.update(la.gf2_span_elements(part.vectors()))
        found.discard(0)
        return found

    return sorted(in_some_part(d1) & in_some_part(d2))


def partition_to_gf2_dsd(p: Partition) -> DSD:
    """The decomposition {℘(B_j)} of ℘(U): each part spanned by the singletons of a block."""
    n = p.n
    parts = tuple(Subspace.span("gf2", n, [1 << i for i in b]) for b in p.blocks)
    return DSD(parts)


def gf2_dsd_to_partition(d: DSD, universe: Universe) -> Partition:
    """Inverse of :func:`partition_to_gf2_dsd`; each part must be a coordinate subspace."""
    if d.field != "gf2" or d.ambient_dim != universe.n:
        raise AmbientMismatch("decomposition does not live on this universe")
    blocks = []
    for part in d.parts:
        support = 0
        for m in part.vectors():
            support |= m
        if part.dim != bin(support).count("1"):
            raise NotADSD("part is not spanned by singletons")
        blocks.append(indices_of(support))
    return make_partition(universe, blocks)


def partition_dsd_roundtrip(p: Partition) -> DSD:
    """Build {℘(B_j)}, check it is a DSD with pairwise zero intersections, and that it inverts."""
    d = partition_to_gf2_dsd(p)
    for i, a in enumerate(d.parts):
        for b in d.parts[i + 1 :]:
            if not a.intersect(b).is_zero:
                raise NotADSD("block powersets intersect nontrivially")
    if gf2_dsd_to_partition(d, p.universe) != p:
        raise NotADSD("decomposition does not recover the partition")
    return d


def rebase(v: int, basis) -> int:
    """Coordinates of ``v`` in ``basis``, as a bitmask over basis indices."""
    basis = as_basis(basis)
    kernel = la.gf2_nullspace(basis.masks + [v], basis.n)
    top = 1 << basis.n
    # the unique kernel vector that uses v gives v = sum of the selected basis vectors
    for x in kernel:
        if x & top:
            return x & (top - 1)
    raise RankDeficient("vector is not in the span of the basis")


def basis_change_matrix(basis) -> list[int]:
    """Columns are the basis vectors in U coordinates."""
    return list(as_basis(basis).masks)


def is_involution(matrix: Sequence[int], n: int) -> bool:
    sq = la.gf2_matmul(matrix, matrix, n)
    return sq == [1 << i for i in range(n)]
