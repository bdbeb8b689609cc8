"""Random test objects: rational distributions, orthogonal/unitary bases, observable pairs.

Exact orthogonal matrices come from the Cayley transform of an integer
skew-symmetric matrix, Q = (I - A)(I + A)^-1, which is rational.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import linalg as la
from .entropy import ProbDist
from .partitions import Partition, Universe, all_partitions
from .quantum import Observable


def random_rational_dist(universe: Universe, rng: random.Random, max_weight: int = 9) -> ProbDist:
    weights = [rng.randint(1, max_weight) for _ in range(universe.n)]
    return ProbDist.from_weights(universe, weights)


def random_partition(universe: Universe, rng: random.Random) -> Partition:
    return rng.choice(list(all_partitions(universe)))


def rational_orthogonal(n: int, rng: random.Random, spread: int = 3) -> tuple:
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(rng.randint(-spread, spread), rng.randint(1, 2))
            a[i][j], a[j][i] = x, -x
    a = la.qmat(a)
    ident = la.q_identity(n)
    return la.q_mul(la.q_sub(ident, a), la.q_inverse(la.q_add(ident, a)))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_pure_state(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def _block_diag_exact(k: int, q: tuple) -> tuple:
    m = len(q)
    n = k + m
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(k):
        rows[i][i] = Fraction(1)
    for i in range(m):
        for j in range(m):
            rows[k + i][k + j] = q[i][j]
    return la.qmat(rows)


def random_observable_pair(n: int, exact: bool, seed: int, values=(1, 2, 3)) -> tuple[Observable, Observable]:
    """Two observables sharing the first k eigenvectors for a random k in 0..n.

    Eigenvalues are drawn from a small set so degenerate eigenspaces occur.
    """
    rng = random.Random(seed)
    k = rng.randint(0, n)
    fvals = [rng.choice(values) for _ in range(n)]
    gvals = [rng.choice(values) for _ in range(n)]
    if exact:
        q1 = rational_orthogonal(n, rng)
        q2 = la.q_mul(q1, _block_diag_exact(k, rational_orthogonal(n - k, rng))) if k < n else q1
        return Observable(q1, fvals), Observable(q2, gvals)
    nrng = np.random.default_rng(seed)
    u1 = random_unitary(n, nrng)
    inner = np.eye(n, dtype=complex)
    if k < n:
        inner[k:, k:] = random_unitary(n - k, nrng)
    return Observable(u1, [float(v) for v in fvals]), Observable(u1 @ inner, [float(v) for v in gvals])


def random_diagonal_observable(n: int, rng: np.random.Generator, nvalues: int = 3) -> Observable:
    vals = [float(v) for v in rng.integers(0, nvalues, size=n)]
    return Observable(np.eye(n, dtype=complex), vals)
