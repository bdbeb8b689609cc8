"""Occupancy counting for Maxwell-Boltzmann, Bose-Einstein and Fermi-Dirac statistics.

k particles (balls) go into n distinguishable states (boxes).  Counts are
exact integers and probabilities exact rationals.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import factorial, perm, prod
from typing import Iterator, Sequence

from .errors import InvalidOccupation, KExceedsN


class StatKind(enum.Enum):
    MB = "MB"
    BE = "BE"
    FD = "FD"


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    if k < 0 or n < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        raise KExceedsN(f"k={k} exceeds n={n}")
    return perm(n, k)


def rising_factorial(n: int, k: int) -> int:
    """n (n+1) ... (n+k-1)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return prod(range(n, n + k))


def state_count(kind: StatKind, n: int, k: int) -> int:
    kind = StatKind(kind)
    if kind is StatKind.FD:
        if k > n:
            raise KExceedsN(f"{k} fermions cannot occupy {n} states")
        return falling_factorial(n, k) // factorial(k)
    if kind is StatKind.BE:
        return rising_factorial(n, k) // factorial(k)
    return n**k


def multinomial(theta: Sequence[int]) -> int:
    out = factorial(sum(theta))
    for t in theta:
        out //= factorial(t)
    return out


def _check_occupation(kind: StatKind, n: int, k: int, theta: Sequence[int]) -> None:
    if len(theta) != n:
        raise InvalidOccupation(f"{len(theta)} occupation numbers for {n} states")
    if any(t < 0 for t in theta):
        raise InvalidOccupation("occupation numbers must be non-negative")
    if sum(theta) != k:
        raise InvalidOccupation(f"occupation numbers sum to {sum(theta)}, not k={k}")
    if kind is StatKind.FD and any(t > 1 for t in theta):
        raise InvalidOccupation("Fermi-Dirac occupation numbers must be 0 or 1")


def occupancy_probability(kind: StatKind, n: int, k: int, theta: Sequence[int]) -> Fraction:
    """Probability of the (ordered) occupation vector theta."""
    kind = StatKind(kind)
    theta = tuple(int(t) for t in theta)
    _check_occupation(kind, n, k, theta)
    if kind is StatKind.MB:
        return Fraction(multinomial(theta), n**k)
    return Fraction(1, state_count(kind, n, k))


def occupations(n: int, k: int, kind: StatKind = StatKind.BE) -> Iterator[tuple[int, ...]]:
    """All valid occupation vectors (FD restricts each entry to 0/1)."""
    cap = 1 if StatKind(kind) is StatKind.FD else k

    def fill(prefix: tuple[int, ...], left: int):
        if len(prefix) == n - 1:
            if left <= cap:
                yield prefix + (left,)
            return
        for t in range(min(cap, left) + 1):
            yield from fill(prefix + (t,), left - t)

    if n >= 1:
        yield from fill((), k)
