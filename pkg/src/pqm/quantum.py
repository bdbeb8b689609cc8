"""Complex density matrices, observables and quantum logical entropy.

Observables are always built from an orthonormal eigenbasis plus a list of
eigenvalues (one per basis vector), never diagonalized from a raw matrix.
Eigenvalues are compared exactly, so degenerate eigenspaces are exactly the
groups of equal declared values.

An eigenbasis given with exact rational entries (and exact values) keeps an
exact operator matrix as well; everything numeric below runs in complex
double precision.

The tensor square V⊗V is indexed row-major: u_j ⊗ u_k is flat index j*n + k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import (
    DimensionMismatch,
    InvalidDensity,
    NonCommutingObservables,
    NotNormalized,
    NotOrthonormal,
    NotSquare,
    UnknownEigenvalue,
)
from .serialize import complex_matrix_to_json, value_to_json


class Observable:
    """Self-adjoint operator sum_i f(u_i) |u_i><u_i| from an eigenbasis and values."""

    def __init__(self, eigenbasis, values: Sequence):
        self.exact = la.is_exact_matrix(eigenbasis) and all(la.is_exact_scalar(v) for v in values)
        if self.exact:
            self.qbasis = la.qmat(eigenbasis)
            self.values = tuple(Fraction(v) for v in values)
        else:
            self.qbasis = None
            self.values = tuple(values)
        self.basis = la.as_complex(eigenbasis)
        if self.basis.ndim != 2 or self.basis.shape[0] != self.basis.shape[1]:
            raise NotSquare(f"eigenbasis must be square, got shape {self.basis.shape}")
        n = self.basis.shape[0]
        if len(self.values) != n:
            raise DimensionMismatch(f"{len(self.values)} eigenvalues for dimension {n}")
        if any(isinstance(v, complex) for v in self.values):
            raise TypeError("eigenvalues must be real")
        if self.exact:
            bt = la.q_transpose(self.qbasis)
            if la.q_mul(bt, self.qbasis) != la.q_identity(n):
                raise NotOrthonormal("eigenbasis columns are not orthonormal")
        else:
            gram = self.basis.conj().T @ self.basis
            if not la.c_is_close(gram, np.eye(n)):
                raise NotOrthonormal("eigenbasis columns are not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def distinct_values(self) -> list:
        """Distinct eigenvalues in order of first appearance."""
        seen = []
        for v in self.values:
            if v not in seen:
                seen.append(v)
        return seen

    def columns_for(self, value) -> list[int]:
        return [i for i, v in enumerate(self.values) if v == value]

    def matrix(self) -> np.ndarray:
        """B diag(f) B^dagger in complex arithmetic."""
        vals = np.array([float(v) for v in self.values])
        return (self.basis * vals) @ self.basis.conj().T

    def exact_matrix(self):
        """B diag(f) B^T over the rationals (only for exact observables)."""
        if not self.exact:
            raise TypeError("observable is not exact")
        n = self.dim
        d = tuple(tuple(self.values[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
        return la.q_mul(la.q_mul(self.qbasis, d), la.q_transpose(self.qbasis))

    def projector(self, value) -> np.ndarray:
        cols = self.columns_for(value)
        if not cols:
            raise UnknownEigenvalue(f"{value!r} is not an eigenvalue")
        b = self.basis[:, cols]
        return b @ b.conj().T

    def projectors(self) -> list[tuple[object, np.ndarray]]:
        return [(v, self.projector(v)) for v in self.distinct_values()]

    def to_json(self) -> dict:
        if self.exact:
            basis = [[value_to_json(x) for x in row] for row in self.qbasis]
        else:
            basis = complex_matrix_to_json(self.basis)
        vals = [value_to_json(v) if self.exact else float(v) for v in self.values]
        return {"basis": basis, "values": vals}


def observable_from_attribute(eigenbasis, values: Sequence) -> Observable:
    return Observable(eigenbasis, values)


def standard_basis(n: int):
    return la.q_identity(n)


class QDensity:
    """Hermitian, unit-trace, positive semidefinite matrix (checked within tolerance)."""

    def __init__(self, matrix, check: bool = True):
        self.matrix = la.as_complex(matrix)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise NotSquare(f"density must be square, got shape {self.matrix.shape}")
        if check:
            tol = la.tolerance()
            m = self.matrix
            if not la.c_is_close(m, m.conj().T, tol):
                raise InvalidDensity("matrix is not Hermitian")
            if abs(np.trace(m) - 1) > tol:
                raise InvalidDensity(f"trace is {np.trace(m)}, not 1")
            if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -tol:
                raise InvalidDensity("matrix is not positive semidefinite")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_json(self) -> list:
        return complex_matrix_to_json(self.matrix)


def _check_dim(rho: QDensity, obs: Observable) -> None:
    if rho.dim != obs.dim:
        raise DimensionMismatch(f"density has dimension {rho.dim}, observable {obs.dim}")


def density_from_state(psi: Sequence[complex]) -> QDensity:
    """rho = |psi><psi| for a normalized state vector."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(v) - 1) > la.tolerance():
        raise NotNormalized(f"state has norm {np.linalg.norm(v)}")
    return QDensity(np.outer(v, v.conj()))


def born_probability(rho: QDensity, obs: Observable, eigenvalue) -> float:
    _check_dim(rho, obs)
    return float(np.real(np.trace(obs.projector(eigenvalue) @ rho.matrix)))


def born_distribution(rho: QDensity, obs: Observable) -> list[tuple[object, float]]:
    return [(v, born_probability(rho, obs, v)) for v in obs.distinct_values()]


def quantum_luders(rho: QDensity, obs: Observable) -> QDensity:
    """Post-measurement state sum_i P_i rho P_i over eigenspace projectors."""
    _check_dim(rho, obs)
    out = np.zeros_like(rho.matrix)
    for _, p in obs.projectors():
        out += p @ rho.matrix @ p
    return QDensity(out)


def in_eigenbasis(rho: QDensity, obs: Observable) -> np.ndarray:
    """rho expressed in the eigenbasis of ``obs``: B^dagger rho B."""
    _check_dim(rho, obs)
    return obs.basis.conj().T @ rho.matrix @ obs.basis


def qudit_pairs(values: Sequence) -> list[tuple[int, int]]:
    n = len(values)
    return [(j, k) for j in range(n) for k in range(n) if values[j] != values[k]]


def qudit_projector(obs: Observable) -> np.ndarray:
    """Projector onto the span of u_j⊗u_k with f(u_j) != f(u_k), in the product eigenbasis."""
    n = obs.dim
    diag = np.zeros(n * n)
    for j, k in qudit_pairs(obs.values):
        diag[j * n + k] = 1.0
    return np.diag(diag).astype(complex)


def qle_via_qudits(obs: Observable, rho: QDensity) -> float:
    """tr[P_qudit (rho⊗rho)] with rho rotated into the eigenbasis of ``obs``."""
    r = in_eigenbasis(rho, obs)
    return float(np.real(np.trace(qudit_projector(obs) @ np.kron(r, r))))


def qle_via_trace(rho: QDensity) -> float:
    """1 - tr[rho^2]."""
    return float(1 - np.real(np.trace(rho.matrix @ rho.matrix)))


def sum_abs_squares(rho: QDensity) -> float:
    return float(np.sum(np.abs(rho.matrix) ** 2))


def qle_via_zeroed(rho_before: QDensity, rho_after: QDensity) -> float:
    """Total absolute-square mass removed from the entries by the measurement."""
    if rho_before.dim != rho_after.dim:
        raise DimensionMismatch("densities have different dimensions")
    return float(np.sum(np.abs(rho_before.matrix) ** 2 - np.abs(rho_after.matrix) ** 2))


@dataclass(frozen=True)
class CompoundQLE:
    h_f: float
    h_g: float
    joint: float
    f_given_g: float
    g_given_f: float
    mutual: float

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def commutes(a: np.ndarray, b: np.ndarray, tol: float | None = None) -> bool:
    return la.c_is_close(a @ b, b @ a, tol)


def common_eigenbasis(obs_f: Observable, obs_g: Observable):
    """Orthonormal simultaneous eigenbasis with exact (f, g) value labels.

    Built from the nonzero intersections of eigenspaces, which tile the whole
    space exactly when the observables commute.
    """
    if obs_f.dim != obs_g.dim:
        raise DimensionMismatch("observables have different dimensions")
    if not commutes(obs_f.matrix(), obs_g.matrix()):
        raise NonCommutingObservables("observables do not commute")
    cols, fvals, gvals = [], [], []
    for fv in obs_f.distinct_values():
        bf = obs_f.basis[:, obs_f.columns_for(fv)]
        for gv in obs_g.distinct_values():
            bg = obs_g.basis[:, obs_g.columns_for(gv)]
            inter = intersect_orthonormal(bf, bg)
            for c in range(inter.shape[1]):
                cols.append(inter[:, c])
                fvals.append(fv)
                gvals.append(gv)
    if len(cols) != obs_f.dim:
        raise NonCommutingObservables("eigenspace intersections do not span the space")
    return np.column_stack(cols), fvals, gvals


def intersect_orthonormal(b1: np.ndarray, b2: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of span(b1) ∩ span(b2) via the kernel of [b1 | -b2]."""
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return np.zeros((b1.shape[0], 0), dtype=complex)
    null = la.c_nullspace(np.hstack([b1, -b2]), tol)
    vecs = b1 @ null[: b1.shape[1], :]
    return la.c_orth(vecs, tol)


def compound_qle(obs_f: Observable, obs_g: Observable, rho: QDensity) -> CompoundQLE:
    """Joint, conditional and mutual quantum logical entropies of commuting F, G."""
    basis, fvals, gvals = common_eigenbasis(obs_f, obs_g)
    _check_dim(rho, obs_f)
    r = basis.conj().T @ rho.matrix @ basis
    rr = np.kron(r, r)
    n = rho.dim
    qf = set(qudit_pairs(fvals))
    qg = set(qudit_pairs(gvals))

    def measure(pairs):
        proj = np.zeros(n * n)
        for j, k in pairs:
            proj[j * n + k] = 1.0
        return float(np.real(np.trace(np.diag(proj) @ rr)))

    return CompoundQLE(
        h_f=measure(qf),
        h_g=measure(qg),
        joint=measure(qf | qg),
        f_given_g=measure(qf - qg),
        g_given_f=measure(qg - qf),
        mutual=measure(qf & qg),
    )


def is_distinction_preserving(m) -> bool:
    """Unitarity: M^dagger M = I within tolerance."""
    a = la.as_complex(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    return la.c_is_close(a.conj().T @ a, np.eye(a.shape[0]))
