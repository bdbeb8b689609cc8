"""Finite groups acting on sets and on vector spaces.

A set representation defines an equivalence relation (same orbit), so its
orbits form a partition.  The vector-space side is restricted to groups
generated by commuting involutions, where the irreducible subspaces come out
of joining the +1/-1 eigenspace decompositions of the generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg as la
from .dsd import DSD, Subspace, dsd_from_observable, join_dsd
from .errors import (
    DimensionMismatch,
    InvalidGroup,
    InvalidRep,
    NonCommutingGenerators,
    NotCommuting,
    NotInvolution,
    SizeMismatch,
)
from .partitions import (
    Attribute,
    Partition,
    Universe,
    components,
    partition_from_attribute,
    refines,
)
from .quantum import Observable, qudit_pairs

MAX_ORDER = 24


@dataclass(frozen=True)
class FiniteGroup:
    """Group given by its multiplication table: ``table[a][b]`` is the index of a*b."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    names: tuple[str, ...] = ()

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        g = len(table)
        if g == 0 or g > MAX_ORDER:
            raise InvalidGroup(f"group order must be in 1..{MAX_ORDER}, got {g}")
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(g)))
        elements = set(range(g))
        for row in table:
            if len(row) != g or set(row) != elements:
                raise InvalidGroup("multiplication table is not a Latin square")
        for col in zip(*table):
            if set(col) != elements:
                raise InvalidGroup("multiplication table is not a Latin square")
        e = self.identity
        if not 0 <= e < g or any(table[e][a] != a or table[a][e] != a for a in range(g)):
            raise InvalidGroup(f"element {e} is not a two-sided identity")
        for a, b, c in product(range(g), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidGroup(f"associativity fails at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def is_abelian(self) -> bool:
        g = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(g) for b in range(g))

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table], "identity": self.identity}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteGroup":
        table = obj["table"]
        if "order" in obj and int(obj["order"]) != len(table):
            raise InvalidGroup("declared order does not match the table")
        return cls(tuple(tuple(r) for r in table), int(obj.get("identity", 0)), tuple(obj.get("names", ())))


def klein_four() -> FiniteGroup:
    """Z2 x Z2 with elements ordered (0,0), (1,0), (0,1), (1,1); index = a + 2b."""
    table = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
    return FiniteGroup(table, 0, ("(0,0)", "(1,0)", "(0,1)", "(1,1)"))


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),))


def symmetric3() -> FiniteGroup:
    """S3 as permutations of (0,1,2), composed as (a*b)(x) = a(b(x))."""
    from itertools import permutations

    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(a[b[x]] for x in range(3))] for b in perms) for a in perms
    )
    return FiniteGroup(table, index[(0, 1, 2)], tuple("".join(map(str, p)) for p in perms))


# ---- set representations ---------------------------------------------------


@dataclass(frozen=True)
class SetRep:
    group: FiniteGroup
    n: int
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        maps = tuple(tuple(int(x) for x in m) for m in self.maps)
        object.__setattr__(self, "maps", maps)
        if len(maps) != self.group.order:
            raise InvalidRep(f"{len(maps)} maps for a group of order {self.group.order}")
        if any(len(m) != self.n or any(not 0 <= x < self.n for x in m) for m in maps):
            raise InvalidRep(f"every map must send range({self.n}) into itself")

    @property
    def universe(self) -> Universe:
        return Universe(self.n)

    def to_json(self) -> dict:
        return {**self.group.to_json(), "n": self.n, "maps": [list(m) for m in self.maps]}

    @classmethod
    def from_json(cls, obj: dict) -> "SetRep":
        maps = obj["maps"]
        n = int(obj.get("n", len(maps[0]) if maps else 0))
        return cls(FiniteGroup.from_json(obj), n, tuple(tuple(m) for m in maps))


def cayley_set_rep(group: FiniteGroup) -> SetRep:
    """Left translation of the group on itself: R_g(h) = g h."""
    return SetRep(group, group.order, tuple(tuple(group.mul(g, h) for h in range(group.order)) for g in range(group.order)))


def set_rep_failures(rep: SetRep) -> list[str]:
    """Which of the three conditions fail: identity, inverses, closure."""
    grp, n = rep.group, rep.n
    ident = tuple(range(n))
    failures = []
    if rep.maps[grp.identity] != ident:
        failures.append("identity")
    inv_ok = True
    for g, m in enumerate(rep.maps):
        back = rep.maps[grp.inverse(g)]
        if len(set(m)) != n or any(back[m[x]] != x for x in range(n)):
            inv_ok = False
            break
    if not inv_ok:
        failures.append("inverses")
    # R_{g'} ∘ R_g must be R_{g'g}
    for g, h in product(range(grp.order), repeat=2):
        composed = tuple(rep.maps[h][rep.maps[g][x]] for x in range(n))
        if composed != rep.maps[grp.mul(h, g)]:
            failures.append("closure")
            break
    return failures


def validate_set_rep(rep: SetRep) -> bool:
    return not set_rep_failures(rep)


def induced_relation(rep: SetRep) -> frozenset[tuple[int, int]]:
    """(u, u') with R_g(u) = u' for some g."""
    return frozenset((x, m[x]) for m in rep.maps for x in range(rep.n))


def relation_properties(rel: frozenset[tuple[int, int]], n: int) -> dict[str, bool]:
    return {
        "reflexive": all((x, x) in rel for x in range(n)),
        "symmetric": all((b, a) in rel for a, b in rel),
        "transitive": all((a, d) in rel for a, b in rel for c, d in rel if b == c),
    }


def orbit_partition(rep: SetRep) -> Partition:
    if not validate_set_rep(rep):
        raise InvalidRep(f"not a group action: {', '.join(set_rep_failures(rep))} failed")
    links = [(x, m[x]) for m in rep.maps for x in range(rep.n)]
    return Partition(rep.universe, components(rep.n, links))


def _check_attr(f: Attribute, rep: SetRep) -> None:
    if f.universe.n != rep.n:
        raise SizeMismatch(f"attribute on {f.universe.n} points, representation on {rep.n}")


def is_commuting_attribute(f: Attribute, rep: SetRep) -> bool:
    """f ∘ R_g = f for every g, cross-checked against orbit refinement."""
    _check_attr(f, rep)
    direct = all(f.values[m[x]] == f.values[x] for m in rep.maps for x in range(rep.n))
    orbits = orbit_partition(rep)
    inverse_image = partition_from_attribute(Attribute(orbits.universe, f.values))
    via_orbits = refines(inverse_image, orbits)
    assert direct == via_orbits, "commuting test disagrees with orbit refinement"
    return direct


def schur_set_check(f: Attribute, rep: SetRep) -> bool:
    """A commuting attribute is constant on every orbit."""
    if not is_commuting_attribute(f, rep):
        raise NotCommuting("attribute does not commute with the representation")
    return all(len({f.values[i] for i in block}) == 1 for block in orbit_partition(rep).blocks)


# ---- vector representations ------------------------------------------------


@dataclass(frozen=True)
class VectorRep:
    group: FiniteGroup
    dim: int
    matrices: tuple = field(repr=False)

    @property
    def exact(self) -> bool:
        return all(la.is_exact_matrix(m) for m in self.matrices)

    def matrix(self, g: int):
        return self.matrices[g]

    def complex_matrix(self, g: int) -> np.ndarray:
        return la.as_complex(self.matrices[g])

    def is_homomorphism(self) -> bool:
        grp = self.group
        if self.exact:
            if self.matrices[grp.identity] != la.q_identity(self.dim):
                return False
            return all(
                la.q_mul(self.matrices[h], self.matrices[g]) == self.matrices[grp.mul(h, g)]
                for g, h in product(range(grp.order), repeat=2)
            )
        if not la.c_is_close(self.complex_matrix(grp.identity), np.eye(self.dim)):
            return False
        return all(
            la.c_is_close(self.complex_matrix(h) @ self.complex_matrix(g), self.complex_matrix(grp.mul(h, g)))
            for g, h in product(range(grp.order), repeat=2)
        )


def cayley_vector_rep(group: FiniteGroup) -> VectorRep:
    """Permutation matrices of left translation: R_g |h> = |g h>."""
    g = group.order
    mats = []
    for a in range(g):
        rows = [[Fraction(0)] * g for _ in range(g)]
        for h in range(g):
            rows[group.mul(a, h)][h] = Fraction(1)
        mats.append(tuple(tuple(r) for r in rows))
    return VectorRep(group, g, tuple(mats))


def involution_eigenspace_dsd(r) -> DSD:
    """+1 and -1 eigenspaces of an involution: column spaces of (I+R)/2 and (I-R)/2."""
    if la.is_exact_matrix(r):
        m = la.qmat(r)
        n = len(m)
        if any(len(row) != n for row in m):
            raise DimensionMismatch("matrix must be square")
        ident = la.q_identity(n)
        if la.q_mul(m, m) != ident:
            raise NotInvolution("R^2 != I")
        plus = la.q_transpose(la.q_scale(Fraction(1, 2), la.q_add(ident, m)))
        minus = la.q_transpose(la.q_scale(Fraction(1, 2), la.q_sub(ident, m)))
        spaces = [(Subspace.span("rational", n, plus), 1), (Subspace.span("rational", n, minus), -1)]
    else:
        m = la.as_complex(r)
        n = m.shape[0]
        if m.shape != (n, n):
            raise DimensionMismatch("matrix must be square")
        if not la.c_is_close(m @ m, np.eye(n)):
            raise NotInvolution("R^2 != I")
        spaces = [
            (Subspace(n, "complex", la.c_orth((np.eye(n) + m) / 2)), 1),
            (Subspace(n, "complex", la.c_orth((np.eye(n) - m) / 2)), -1),
        ]
    kept = [(s, lab) for s, lab in spaces if not s.is_zero]
    return DSD(tuple(s for s, _ in kept), tuple(lab for _, lab in kept))


def _flatten(label) -> tuple:
    if isinstance(label, tuple):
        out = ()
        for x in label:
            out += _flatten(x)
        return out
    return (label,)


def irrep_decomposition(rep: VectorRep, generators: Sequence[int]) -> list[tuple[Subspace, tuple[int, ...]]]:
    """Join the eigenspace decompositions of commuting involutive generators.

    Each subspace carries the tuple of generator eigenvalues (the ket label).
    Results are ordered with the last generator's eigenvalue varying slowest
    and +1 before -1, i.e. |1,1>, |-1,1>, |1,-1>, |-1,-1> for two generators.
    """
    mats = [rep.matrix(g) for g in generators]
    for i, a in enumerate(mats):
        for b in mats[i + 1 :]:
            if rep.exact:
                ok = la.q_mul(a, b) == la.q_mul(b, a)
            else:
                ok = la.c_is_close(la.as_complex(a) @ la.as_complex(b), la.as_complex(b) @ la.as_complex(a))
            if not ok:
                raise NonCommutingGenerators("generators do not commute")
    field_ = "rational" if rep.exact else "complex"
    if not mats:
        return [(Subspace.whole(field_, rep.dim), ())]
    dsds = [involution_eigenspace_dsd(m) for m in mats]
    acc = dsds[0]
    for d in dsds[1:]:
        acc = join_dsd(acc, d)
    out = [(s, _flatten(lab)) for s, lab in zip(acc.parts, acc.labels)]
    out.sort(key=lambda item: tuple(-x for x in reversed(item[1])))
    return out


def ket(label: Sequence[int]) -> str:
    return "|" + ",".join(str(x) for x in label) + "⟩"


def maps_subspace_into_itself(m, s: Subspace) -> bool:
    if s.field == "rational":
        q = la.qmat(m)
        return all(s.contains_vector(la.q_matvec(q, v)) for v in s.vectors())
    a = la.as_complex(m)
    return all(s.contains_vector(a @ v) for v in s.matrix().T)


def acts_as_scalar(m, s: Subspace) -> bool:
    """Whether ``m`` restricted to ``s`` is a multiple of the identity."""
    a = la.as_complex(m)
    basis = s.matrix()
    if basis.shape[1] == 0:
        return True
    image = a @ basis
    # the scalar is read off by projecting the image back onto the basis
    coeffs = np.linalg.lstsq(basis, image, rcond=None)[0]
    c = coeffs[0, 0]
    return la.c_is_close(coeffs, c * np.eye(basis.shape[1])) and la.c_is_close(image, c * basis)


def verify_commuting_operator(obs: Observable, rep: VectorRep) -> bool:
    """F R_g = R_g F for all g, plus the consequence (R_g)_{ik} = 0 on qudits of F."""
    if obs.dim != rep.dim:
        raise DimensionMismatch(f"observable has dimension {obs.dim}, representation {rep.dim}")
    if obs.exact and rep.exact:
        f = obs.exact_matrix()
        commute = all(la.q_mul(f, m) == la.q_mul(m, f) for m in rep.matrices)
    else:
        f = obs.matrix()
        commute = all(la.c_is_close(f @ rep.complex_matrix(g), rep.complex_matrix(g) @ f) for g in range(rep.group.order))
    if not commute:
        return False
    b = obs.basis
    tol = la.tolerance()
    for g in range(rep.group.order):
        m = b.conj().T @ rep.complex_matrix(g) @ b
        if any(abs(m[i, k]) > tol for i, k in qudit_pairs(obs.values)):
            return False
    return True


def irreps_refine_eigenspaces(irreps: Sequence[tuple[Subspace, tuple]], obs: Observable) -> bool:
    """Each irreducible subspace lies inside a single eigenspace of ``obs``."""
    exact = obs.exact and all(s.field == "rational" for s, _ in irreps)
    field_ = "rational" if exact else "complex"
    parts = dsd_from_observable(obs, field_).parts
    for space, _ in irreps:
        if space.ambient_dim != obs.dim:
            raise DimensionMismatch(f"subspace lives in dimension {space.ambient_dim}, observable in {obs.dim}")
        if not exact and space.field != "complex":
            space = Subspace(space.ambient_dim, "complex", la.c_orth(space.matrix()))
        if not any(p.contains(space) for p in parts):
            return False
    return True
