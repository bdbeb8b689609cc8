"""Real density matrices of partitions and the classical Lüders mixture.

Entries of a partition density matrix are square roots ``sqrt(p_i p_k)``.
They are stored as :class:`Surd` values, i.e. by their rational radicand,
so every quantity read out of the matrix (traces of squares, squared zeroed
entries, Born probabilities) stays an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .entropy import ProbDist
from .errors import IndexOutOfRange, UniverseMismatch
from .partitions import Partition, Universe, inditset
from .serialize import format_rational, rational_to_json


def _rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    a, b = x.numerator, x.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


@dataclass(frozen=True)
class Surd:
    """The non-negative real number sqrt(radicand)."""

    radicand: Fraction

    def __post_init__(self):
        r = Fraction(self.radicand)
        if r < 0:
            raise ValueError("radicand must be non-negative")
        object.__setattr__(self, "radicand", r)

    @classmethod
    def of(cls, x) -> "Surd":
        """Wrap a non-negative rational value (not a radicand)."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("only non-negative values are representable")
        return cls(x * x)

    @property
    def value(self) -> Fraction | None:
        return _rational_sqrt(self.radicand)

    @property
    def is_rational(self) -> bool:
        return self.value is not None

    def square(self) -> Fraction:
        return self.radicand

    def __bool__(self):
        return self.radicand != 0

    def __float__(self):
        return float(self.radicand) ** 0.5

    def scale(self, c) -> "Surd":
        c = Fraction(c)
        if c < 0:
            raise ValueError("negative scaling leaves the non-negative surds")
        return Surd(c * c * self.radicand)

    def __add__(self, other: "Surd") -> "Surd":
        # sqrt(a) + sqrt(b) is a surd only when b/a is a rational square
        if not other:
            return self
        if not self:
            return other
        ratio = _rational_sqrt(other.radicand / self.radicand)
        if ratio is None:
            raise ValueError(f"sqrt({self.radicand}) + sqrt({other.radicand}) is not a single surd")
        return Surd(self.radicand * (1 + ratio) ** 2)

    def __str__(self):
        v = self.value
        return format_rational(v) if v is not None else f"sqrt({format_rational(self.radicand)})"

    def to_json(self) -> dict:
        v = self.value
        if v is not None:
            return {**rational_to_json(v), "sqrt": False}
        return {**rational_to_json(self.radicand), "sqrt": True}


ZERO = Surd(Fraction(0))


@dataclass(frozen=True)
class RealDensity:
    universe: Universe
    entries: tuple[tuple[Surd, ...], ...]

    @property
    def n(self) -> int:
        return self.universe.n

    def __getitem__(self, ik: tuple[int, int]) -> Surd:
        i, k = ik
        return self.entries[i][k]

    def trace(self) -> Fraction:
        return sum((self.entries[i][i].value for i in range(self.n)), Fraction(0))

    def trace_of_square(self) -> Fraction:
        # tr[rho^2] = sum_ik rho_ik rho_ki, and rho is symmetric
        return sum((e.square() for row in self.entries for e in row), Fraction(0))

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][k] == self.entries[k][i] for i in range(self.n) for k in range(self.n)
        )

    def as_fractions(self) -> list[list[Fraction]]:
        """Entries as rationals; raises if some entry is irrational."""
        out = []
        for row in self.entries:
            vals = [e.value for e in row]
            if any(v is None for v in vals):
                raise ValueError("density has irrational entries")
            out.append(vals)
        return out

    def as_floats(self) -> list[list[float]]:
        return [[float(e) for e in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "labels": list(self.universe.labels),
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    def format(self) -> str:
        cells = [[str(e) for e in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def density_of_partition(p: Partition, d: ProbDist) -> RealDensity:
    """sqrt(p_i p_k) on the indits of ``p``, zero elsewhere.

    Elements of probability zero give zero rows and columns; a block of
    probability zero contributes nothing.
    """
    if p.universe != d.universe:
        raise UniverseMismatch("partition and distribution live on different universes")
    indits = inditset(p)
    n = p.n
    rows = tuple(
        tuple(Surd(d.p[i] * d.p[k]) if (i, k) in indits else ZERO for k in range(n))
        for i in range(n)
    )
    return RealDensity(p.universe, rows)


def set_born_rule(rho: RealDensity, i: int) -> Fraction:
    """tr[P_{u_i} rho]: the diagonal entry, always rational."""
    if not 0 <= i < rho.n:
        raise IndexOutOfRange(f"index {i} outside universe of size {rho.n}")
    return rho.entries[i][i].value


def _sandwich(rho: RealDensity, block_mask: int) -> list[list[Surd]]:
    # P_C rho P_C with P_C the diagonal 0/1 projector of block C
    chi = [(block_mask >> i) & 1 for i in range(rho.n)]
    return [
        [rho.entries[i][k].scale(chi[i] * chi[k]) for k in range(rho.n)] for i in range(rho.n)
    ]


def classical_luders(rho: RealDensity, sigma: Partition) -> RealDensity:
    """Sum over blocks C of sigma of P_C rho P_C."""
    if rho.universe != sigma.universe:
        raise UniverseMismatch("density and partition live on different universes")
    n = rho.n
    acc = [[ZERO] * n for _ in range(n)]
    for mask in sigma.masks:
        term = _sandwich(rho, mask)
        for i in range(n):
            for k in range(n):
                acc[i][k] = acc[i][k] + term[i][k]
    return RealDensity(rho.universe, tuple(tuple(row) for row in acc))


def density_entropy(rho: RealDensity) -> Fraction:
    return 1 - rho.trace_of_square()


@dataclass(frozen=True)
class ZeroedReport:
    zeroed_pairs: tuple[tuple[int, int], ...]
    sum_of_squares: Fraction
    entropy_before: Fraction
    entropy_after: Fraction

    def to_json(self) -> dict:
        return {
            "zeroed_pairs": [list(ik) for ik in self.zeroed_pairs],
            "sum_of_squares": rational_to_json(self.sum_of_squares),
            "entropy_before": rational_to_json(self.entropy_before),
            "entropy_after": rational_to_json(self.entropy_after),
        }


def zeroed_entries(before: RealDensity, after: RealDensity) -> list[tuple[int, int]]:
    n = before.n
    return [
        (i, k)
        for i in range(n)
        for k in range(n)
        if before.entries[i][k] and not after.entries[i][k]
    ]


def measure_and_report(p: Partition, sigma: Partition, d: ProbDist) -> ZeroedReport:
    """Measure ``sigma`` on rho(p) and account for the coherences it zeroes."""
    before = density_of_partition(p, d)
    after = classical_luders(before, sigma)
    pairs = zeroed_entries(before, after)
    return ZeroedReport(
        zeroed_pairs=tuple(pairs),
        sum_of_squares=sum((before[ik].square() for ik in pairs), Fraction(0)),
        entropy_before=density_entropy(before),
        entropy_after=density_entropy(after),
    )


def density_from_fractions(universe: Universe, rows: Sequence[Sequence]) -> RealDensity:
    """Build a RealDensity from non-negative rational entries (for tests and the CLI)."""
    return RealDensity(universe, tuple(tuple(Surd.of(x) for x in row) for row in rows))
