from fractions import Fraction

import numpy as np
import pytest

from pqm.errors import DimensionMismatch, InvalidDensity, NonCommutingObservables, NotNormalized, NotOrthonormal, NotSquare, UnknownEigenvalue
from pqm.quantum import (
    Observable,
    QDensity,
    born_distribution,
    born_probability,
    compound_qle,
    density_from_state,
    is_distinction_preserving,
    qle_via_qudits,
    qle_via_trace,
    qle_via_zeroed,
    quantum_luders,
    qudit_projector,
)

TOL = 1e-12
S = 1 / np.sqrt(2)
HADAMARD = np.array([[S, S], [S, -S]])


def spin():
    return Observable(((1, 0), (0, 1)), (1, -1))


def diag_obs(values):
    n = len(values)
    return Observable(np.eye(n, dtype=complex), [float(v) for v in values])


def test_observable_matrices():
    f = spin()
    assert f.exact
    assert f.exact_matrix() == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1)))
    assert np.allclose(Observable(HADAMARD, (1.0, -1.0)).matrix(), [[0, 1], [1, 0]])
    assert np.allclose(Observable(HADAMARD, (3.0, 3.0)).matrix(), 3 * np.eye(2))


def test_observable_validation():
    with pytest.raises(NotOrthonormal):
        Observable(((1, 1), (0, 1)), (1, 2))
    with pytest.raises(DimensionMismatch):
        Observable(((1, 0), (0, 1)), (1, 2, 3))
    with pytest.raises(NotSquare):
        Observable(np.ones((2, 3)), (1.0, 2.0))


def test_density_from_state():
    a, b = 0.6, 0.8j
    rho = density_from_state([a, b])
    assert np.allclose(rho.matrix, [[0.36, a * np.conj(b)], [b * np.conj(a), 0.64]], atol=TOL)
    assert np.allclose(density_from_state([1, 0, 0]).matrix, np.diag([1, 0, 0]))
    assert np.allclose(density_from_state([S, S]).matrix, np.full((2, 2), 0.5))
    assert np.allclose(rho.matrix @ rho.matrix, rho.matrix, atol=TOL)
    with pytest.raises(NotNormalized):
        density_from_state([1, 1])


def test_qdensity_validation():
    with pytest.raises(InvalidDensity):
        QDensity([[0.5, 1j], [1j, 0.5]])
    with pytest.raises(InvalidDensity):
        QDensity([[0.5, 0], [0, 0.6]])
    with pytest.raises(InvalidDensity):
        QDensity([[1.5, 0], [0, -0.5]])


def test_born_probability():
    rho = density_from_state([0.6, 0.8j])
    assert born_probability(rho, spin(), 1) == pytest.approx(0.36, abs=TOL)
    assert born_probability(density_from_state([0, 1]), spin(), -1) == pytest.approx(1.0)
    rho = density_from_state([np.sqrt(1 / 3), np.sqrt(2 / 3)])
    assert born_probability(rho, spin(), -1) == pytest.approx(2 / 3, abs=TOL)
    assert sum(p for _, p in born_distribution(rho, spin())) == pytest.approx(1.0, abs=TOL)
    with pytest.raises(UnknownEigenvalue):
        born_probability(rho, spin(), 7)


def test_quantum_luders():
    rho = density_from_state([0.6, 0.8j])
    assert np.allclose(quantum_luders(rho, spin()).matrix, np.diag([0.36, 0.64]), atol=TOL)
    diag = QDensity(np.diag([0.3, 0.7]))
    assert np.allclose(quantum_luders(diag, spin()).matrix, diag.matrix)
    assert np.allclose(quantum_luders(density_from_state([S, S]), spin()).matrix, np.diag([0.5, 0.5]))
    with pytest.raises(DimensionMismatch):
        quantum_luders(density_from_state([1, 0, 0]), spin())


def test_luders_idempotent():
    rng = np.random.default_rng(1)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    rho = density_from_state(v / np.linalg.norm(v))
    f = diag_obs([1, 1, 2, 3])
    once = quantum_luders(rho, f)
    assert np.allclose(quantum_luders(once, f).matrix, once.matrix, atol=TOL)


def test_qudit_projector():
    assert np.array_equal(qudit_projector(spin()), np.diag([0, 1, 1, 0]).astype(complex))
    assert not qudit_projector(diag_obs([2, 2, 2])).any()
    p = qudit_projector(diag_obs([1, 2, 2]))
    ones = {(j, k) for j in range(3) for k in range(3) if p[j * 3 + k, j * 3 + k] == 1}
    assert ones == {(0, 1), (0, 2), (1, 0), (2, 0)}
    assert np.trace(p).real == 4


def test_qle_three_ways_on_examples():
    rho = density_from_state([0.6, 0.8j])
    f = spin()
    post = quantum_luders(rho, f)
    want = 2 * 0.36 * 0.64
    assert qle_via_qudits(f, rho) == pytest.approx(want, abs=TOL)
    assert qle_via_trace(post) == pytest.approx(want, abs=TOL)
    assert qle_via_zeroed(rho, post) == pytest.approx(want, abs=TOL)
    assert qle_via_trace(rho) == pytest.approx(0, abs=TOL)
    assert qle_via_qudits(f, density_from_state([1, 0])) == pytest.approx(0, abs=TOL)
    assert qle_via_qudits(f, density_from_state([S, S])) == pytest.approx(0.5, abs=TOL)
    assert qle_via_zeroed(rho, rho) == 0
    r3 = density_from_state([np.sqrt(1 / 3), np.sqrt(2 / 3)])
    assert qle_via_zeroed(r3, quantum_luders(r3, f)) == pytest.approx(4 / 9, abs=TOL)
    assert qle_via_trace(QDensity(np.eye(5) / 5)) == pytest.approx(1 - 1 / 5, abs=TOL)


def test_qle_rotates_into_eigenbasis():
    # sigma_x measured on |0>: the state is not given in the eigenbasis
    f = Observable(HADAMARD, (1.0, -1.0))
    rho = density_from_state([1, 0])
    assert qle_via_qudits(f, rho) == pytest.approx(0.5, abs=TOL)
    assert qle_via_trace(quantum_luders(rho, f)) == pytest.approx(0.5, abs=TOL)


def test_compound_qle():
    rng = np.random.default_rng(3)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    rho = density_from_state(v / np.linalg.norm(v))
    f = diag_obs([1, 1, 2, 2])
    r = compound_qle(f, f, rho)
    assert r.mutual == pytest.approx(r.h_f, abs=TOL)
    assert r.f_given_g == pytest.approx(0, abs=TOL) and r.g_given_f == pytest.approx(0, abs=TOL)

    mixed = QDensity(np.eye(4) / 4)
    r = compound_qle(f, diag_obs([1, 2, 1, 2]), mixed)
    assert r.joint == pytest.approx(3 / 4, abs=TOL)
    assert r.h_f == pytest.approx(r.f_given_g + r.mutual, abs=TOL)

    r = compound_qle(f, diag_obs([5, 5, 5, 5]), rho)
    assert r.joint == pytest.approx(r.h_f, abs=TOL) and r.mutual == pytest.approx(0, abs=TOL)


def test_compound_qle_refuses_non_commuting():
    with pytest.raises(NonCommutingObservables):
        compound_qle(spin(), Observable(HADAMARD, (1.0, -1.0)), density_from_state([1, 0]))


def test_is_distinction_preserving():
    assert is_distinction_preserving(np.eye(3))
    assert is_distinction_preserving(HADAMARD)
    assert not is_distinction_preserving([[1, 1], [0, 1]])
    with pytest.raises(NotSquare):
        is_distinction_preserving(np.ones((2, 3)))


def test_tolerance_env_override(monkeypatch):
    from pqm import linalg

    monkeypatch.setenv("PQM_TOL", "1e-3")
    assert linalg.tolerance() == 1e-3
    density_from_state([1, 0.0005])
    monkeypatch.delenv("PQM_TOL")
    assert linalg.tolerance() == linalg.DEFAULT_TOL
