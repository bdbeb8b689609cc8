"""Subspaces, direct-sum decompositions, and the commuting/conjugate trichotomy.

A :class:`Subspace` carries a field tag:

``rational``
    basis in reduced row echelon form (rows are the spanning vectors), so
    equality is canonical-form equality.
``complex``
    orthonormal columns; equality is tested by mutual projection residual.
``gf2``
    bitmask vectors in reduced echelon form.

Intersections are computed from the kernel of the stacked system [B1 | -B2].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Hashable, Sequence

import numpy as np

from . import linalg as la
from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    NonCommutingObservables,
    NotADSD,
    NotSquare,
    PropositionViolated,
)
from .quantum import Observable
from .serialize import complex_to_json, rational_to_json

FIELDS = ("rational", "complex", "gf2")


class Subspace:
    __slots__ = ("ambient_dim", "field", "_basis")

    def __init__(self, ambient_dim: int, field: str, basis):
        # use Subspace.span; this constructor trusts a canonical basis
        self.ambient_dim = ambient_dim
        self.field = field
        self._basis = basis

    @classmethod
    def span(cls, field: str, n: int, vectors) -> "Subspace":
        if field == "rational":
            vecs = [tuple(Fraction(x) for x in v) for v in vectors]
            if any(len(v) != n for v in vecs):
                raise DimensionMismatch("vector length differs from ambient dimension")
            rows, _ = la.q_rref(vecs)
            return cls(n, field, tuple(tuple(r) for r in rows))
        if field == "complex":
            vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
            if any(v.shape[0] != n for v in vecs):
                raise DimensionMismatch("vector length differs from ambient dimension")
            mat = np.column_stack(vecs) if vecs else np.zeros((n, 0), dtype=complex)
            return cls(n, field, la.c_orth(mat))
        if field == "gf2":
            masks = [int(v) for v in vectors]
            if any(m >> n for m in masks):
                raise DimensionMismatch("bitmask exceeds ambient dimension")
            rows, _ = la.gf2_rref(masks)
            return cls(n, field, tuple(rows))
        raise ValueError(f"unknown field {field!r}")

    @classmethod
    def whole(cls, field: str, n: int) -> "Subspace":
        if field == "rational":
            return cls.span(field, n, la.q_identity(n))
        if field == "complex":
            return cls.span(field, n, list(np.eye(n, dtype=complex)))
        return cls.span(field, n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, field: str, n: int) -> "Subspace":
        return cls.span(field, n, [])

    @property
    def dim(self) -> int:
        if self.field == "complex":
            return self._basis.shape[1]
        return len(self._basis)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def vectors(self) -> list:
        """Spanning vectors: Fraction tuples, complex 1-d arrays, or GF(2) masks."""
        if self.field == "complex":
            return [self._basis[:, j] for j in range(self.dim)]
        return list(self._basis)

    def matrix(self) -> np.ndarray:
        """Basis vectors as the columns of a complex array."""
        if self.field == "complex":
            return self._basis
        if self.field == "rational":
            cols = [[complex(x) for x in v] for v in self._basis]
        else:
            cols = [[complex((m >> i) & 1) for i in range(self.ambient_dim)] for m in self._basis]
        if not cols:
            return np.zeros((self.ambient_dim, 0), dtype=complex)
        return np.array(cols, dtype=complex).T

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise AmbientMismatch(
                f"cannot combine {self.field}^{self.ambient_dim} with {other.field}^{other.ambient_dim}"
            )

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        n, field = self.ambient_dim, self.field
        if self.is_zero or other.is_zero:
            return Subspace.zero(field, n)
        a, b = self.vectors(), other.vectors()
        if field == "rational":
            stacked = la.q_from_columns(a + [tuple(-x for x in v) for v in b], n)
            kernel = la.q_nullspace(stacked)
            vecs = [
                tuple(sum((c * v[i] for c, v in zip(x[: len(a)], a)), Fraction(0)) for i in range(n))
                for x in kernel
            ]
            return Subspace.span(field, n, vecs)
        if field == "gf2":
            kernel = la.gf2_nullspace(a + b, n)
            mask_a = (1 << len(a)) - 1
            return Subspace.span(field, n, [la.gf2_combine(a, x & mask_a) for x in kernel])
        from .quantum import intersect_orthonormal

        return Subspace(n, field, intersect_orthonormal(self._basis, other._basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.vectors() + other.vectors())

    def contains_vector(self, v) -> bool:
        if self.field == "rational":
            return la.q_rank(list(self._basis) + [tuple(Fraction(x) for x in v)]) == self.dim
        if self.field == "gf2":
            return la.gf2_in_span(int(v), self._basis)
        v = np.asarray(v, dtype=complex).reshape(-1)
        q = self._basis
        residual = v - q @ (q.conj().T @ v)
        return float(np.linalg.norm(residual)) <= la.tolerance() * max(1.0, float(np.linalg.norm(v)))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.vectors())

    def equals(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim != other.dim:
            return False
        if self.field == "complex":
            return self.contains(other) and other.contains(self)
        return self._basis == other._basis

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            return False
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"Subspace({self.field}, ambient={self.ambient_dim}, dim={self.dim})"

    def to_json(self) -> dict:
        if self.field == "rational":
            cols = [[rational_to_json(x) for x in v] for v in self._basis]
        elif self.field == "gf2":
            cols = [[(m >> i) & 1 for i in range(self.ambient_dim)] for m in self._basis]
        else:
            cols = [[complex_to_json(z) for z in self._basis[:, j]] for j in range(self.dim)]
        return {"field": self.field, "ambient_dim": self.ambient_dim, "basis": cols}


def span_all(field: str, n: int, parts: Sequence[Subspace]) -> Subspace:
    vecs = []
    for p in parts:
        vecs.extend(p.vectors())
    return Subspace.span(field, n, vecs)


@dataclass(frozen=True)
class DSD:
    """A direct-sum decomposition: parts whose dimensions add up to n and which span."""

    parts: tuple[Subspace, ...]
    labels: tuple[Hashable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise NotADSD("a decomposition needs at least one part")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(self.parts))))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != len(self.parts):
            raise NotADSD("one label per part required")
        first = self.parts[0]
        for p in self.parts[1:]:
            first._check(p)
        if any(p.is_zero for p in self.parts):
            raise NotADSD("parts must be non-zero")
        n = first.ambient_dim
        if sum(p.dim for p in self.parts) != n:
            raise NotADSD(f"part dimensions sum to {sum(p.dim for p in self.parts)}, not {n}")
        # dims add to n and together they span: the concatenated basis is invertible
        if span_all(first.field, n, self.parts).dim != n:
            raise NotADSD("parts do not span the ambient space")

    @property
    def ambient_dim(self) -> int:
        return self.parts[0].ambient_dim

    @property
    def field(self) -> str:
        return self.parts[0].field

    def dims(self) -> list[int]:
        return [p.dim for p in self.parts]

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "ambient_dim": self.ambient_dim,
            "labels": [_label_json(l) for l in self.labels],
            "parts": [p.to_json() for p in self.parts],
        }


def _label_json(label):
    if isinstance(label, tuple):
        return [_label_json(x) for x in label]
    if isinstance(label, Fraction):
        return rational_to_json(label)
    return label


def dsd_from_observable(obs: Observable, field: str | None = None) -> DSD:
    """Eigenspace decomposition: one part per distinct eigenvalue."""
    field = field or ("rational" if obs.exact else "complex")
    n = obs.dim
    parts = []
    for v in obs.distinct_values():
        cols = obs.columns_for(v)
        if field == "rational":
            vecs = [tuple(obs.qbasis[i][c] for i in range(n)) for c in cols]
        else:
            vecs = [obs.basis[:, c] for c in cols]
        parts.append(Subspace.span(field, n, vecs))
    return DSD(tuple(parts), tuple(obs.distinct_values()))


def join_like_labelled(d1: DSD, d2: DSD) -> list[tuple[Subspace, tuple]]:
    """Nonzero pairwise intersections V_i ∩ W_j with their (label_i, label_j)."""
    if d1.ambient_dim != d2.ambient_dim or d1.field != d2.field:
        raise AmbientMismatch("decompositions live in different spaces")
    out = []
    for (a, la_), (b, lb) in product(zip(d1.parts, d1.labels), zip(d2.parts, d2.labels)):
        inter = a.intersect(b)
        if not inter.is_zero:
            out.append((inter, (la_, lb)))
    return out


def join_like(d1: DSD, d2: DSD) -> tuple[list[Subspace], Subspace]:
    """Nonzero eigenspace intersections and SE, the subspace they span."""
    parts = [s for s, _ in join_like_labelled(d1, d2)]
    return parts, span_all(d1.field, d1.ambient_dim, parts)


def join_dsd(d1: DSD, d2: DSD) -> DSD:
    """The join as a DSD; only defined when SE is the whole space."""
    labelled = join_like_labelled(d1, d2)
    if sum(s.dim for s, _ in labelled) != d1.ambient_dim:
        raise NotADSD("SE is a proper subspace, so the join-like result is not a decomposition")
    return DSD(tuple(s for s, _ in labelled), tuple(l for _, l in labelled))


def commutator_kernel(f, g) -> Subspace:
    """ker(FG - GF): exact over rationals, tolerance-ranked over complex."""
    if la.is_exact_matrix(f) and la.is_exact_matrix(g):
        a, b = la.qmat(f), la.qmat(g)
        n = len(a)
        if any(len(r) != n for r in a) or any(len(r) != len(b) for r in b):
            raise NotSquare("operators must be square")
        if len(b) != n:
            raise DimensionMismatch("operators have different dimensions")
        comm = la.q_sub(la.q_mul(a, b), la.q_mul(b, a))
        return Subspace.span("rational", n, la.q_nullspace(comm, n))
    a, b = la.as_complex(f), la.as_complex(g)
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise NotSquare("operators must be square")
    if a.shape != b.shape:
        raise DimensionMismatch("operators have different dimensions")
    n = a.shape[0]
    return Subspace(n, "complex", la.c_nullspace(a @ b - b @ a))


class Kind(enum.Enum):
    COMMUTING = "Commuting"
    INCOMPATIBLE = "Incompatible"
    CONJUGATE = "Conjugate"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    se_dim: int
    kernel_dim: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "se_dim": self.se_dim}
        if self.kernel_dim is not None:
            out["kernel_dim"] = self.kernel_dim
        return out


def kind_of(se_dim: int, n: int) -> Kind:
    if se_dim == n:
        return Kind.COMMUTING
    if se_dim == 0:
        return Kind.CONJUGATE
    return Kind.INCOMPATIBLE


def _common_field(f: Observable, g: Observable) -> str:
    return "rational" if f.exact and g.exact else "complex"


def simultaneous_eigenspace(f: Observable, g: Observable) -> Subspace:
    field = _common_field(f, g)
    _, se = join_like(dsd_from_observable(f, field), dsd_from_observable(g, field))
    return se


def operator_matrices(f: Observable, g: Observable):
    if _common_field(f, g) == "rational":
        return f.exact_matrix(), g.exact_matrix()
    return f.matrix(), g.matrix()


def preimage(op, space: Subspace) -> Subspace:
    """{v : op v in space}."""
    n = space.ambient_dim
    if space.field == "rational":
        annihilator = la.q_nullspace(space.vectors(), n) if space.dim else list(la.q_identity(n))
        if not annihilator:
            return Subspace.whole("rational", n)
        return Subspace.span("rational", n, la.q_nullspace(la.q_mul(annihilator, la.qmat(op)), n))
    if space.field == "complex":
        q = space.matrix()
        residual = (np.eye(n) - q @ q.conj().T) @ la.as_complex(op)
        return Subspace(n, "complex", la.c_nullspace(residual))
    raise ValueError("preimage is only implemented for rational and complex subspaces")


def invariant_core(space: Subspace, operators) -> Subspace:
    """Largest subspace of ``space`` mapped into itself by every operator."""
    while True:
        shrunk = space
        for op in operators:
            shrunk = shrunk.intersect(preimage(op, space))
        if shrunk.dim == space.dim:
            return space
        space = shrunk


def classify(f: Observable, g: Observable) -> Classification:
    """Commuting / incompatible / conjugate, computed two ways and cross-checked.

    SE comes from the join-like operation on eigenspace decompositions.  The
    second path starts from ker[F,G] and keeps its largest F- and G-invariant
    part; the kernel itself can be strictly larger than SE (for instance any
    pair of real symmetric 3x3 matrices has a nonzero commutator kernel), so it
    is reported but not required to match.
    """
    if f.dim != g.dim:
        raise DimensionMismatch("observables have different dimensions")
    se = simultaneous_eigenspace(f, g)
    fm, gm = operator_matrices(f, g)
    kernel = commutator_kernel(fm, gm)
    core = invariant_core(kernel, (fm, gm))
    if not se.equals(core):
        raise PropositionViolated(
            f"SE (dim {se.dim}) differs from the invariant part of ker[F,G] (dim {core.dim})"
        )
    return Classification(kind_of(se.dim, f.dim), se.dim, kernel.dim)


def iterated_join(dsds: Sequence[DSD]) -> DSD:
    acc = dsds[0]
    for d in dsds[1:]:
        acc = join_dsd(acc, d)
    return acc


def is_csco(observables: Sequence[Observable]) -> bool:
    """Whether the joined eigenspace decomposition has only one-dimensional parts."""
    if not observables:
        raise ValueError("need at least one observable")
    for i, a in enumerate(observables):
        for b in observables[i + 1 :]:
            if classify(a, b).kind is not Kind.COMMUTING:
                raise NonCommutingObservables("a CSCO needs pairwise commuting observables")
    field = "rational" if all(o.exact for o in observables) else "complex"
    joined = iterated_join([dsd_from_observable(o, field) for o in observables])
    return all(p.dim == 1 for p in joined.parts)
