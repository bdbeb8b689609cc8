"""Logical entropy of partitions under exact rational distributions.

Logical entropy is the product measure of the ditset: the probability that
two independent draws land in different blocks.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, InvalidDistribution, UniverseMismatch
from .partitions import Partition, Universe, ditset, join
from .serialize import rational_to_json


@dataclass(frozen=True)
class ProbDist:
    universe: Universe
    p: tuple[Fraction, ...]

    def __post_init__(self):
        probs = []
        for x in self.p:
            if isinstance(x, float):
                raise InvalidDistribution("probabilities must be exact rationals, not floats")
            probs.append(Fraction(x))
        object.__setattr__(self, "p", tuple(probs))
        if len(self.p) != self.universe.n:
            raise InvalidDistribution(
                f"{len(self.p)} probabilities for a universe of size {self.universe.n}"
            )
        if any(x < 0 for x in self.p):
            raise InvalidDistribution("probabilities must be non-negative")
        if sum(self.p) != 1:
            raise InvalidDistribution(f"probabilities sum to {sum(self.p)}, not 1")

    @classmethod
    def uniform(cls, universe: Universe) -> "ProbDist":
        return cls(universe, (Fraction(1, universe.n),) * universe.n)

    @classmethod
    def from_weights(cls, universe: Universe, weights: Sequence[int]) -> "ProbDist":
        """Normalize non-negative integer (or rational) weights."""
        total = sum(Fraction(w) for w in weights)
        return cls(universe, tuple(Fraction(w) / total for w in weights))

    def __getitem__(self, i: int) -> Fraction:
        return self.p[i]


def _check(p: Partition, d: ProbDist) -> None:
    if p.universe != d.universe:
        raise UniverseMismatch("partition and distribution live on different universes")


def block_prob(d: ProbDist, block: Iterable[int]) -> Fraction:
    total = Fraction(0)
    for i in block:
        if not 0 <= i < d.universe.n:
            raise IndexOutOfRange(f"index {i} outside universe of size {d.universe.n}")
        total += d.p[i]
    return total


def logical_entropy(p: Partition, d: ProbDist) -> Fraction:
    """1 - sum of squared block probabilities."""
    _check(p, d)
    return 1 - sum((block_prob(d, b) ** 2 for b in p.blocks), Fraction(0))


def pair_measure(pairs: Iterable[tuple[int, int]], d: ProbDist) -> Fraction:
    """Product measure p x p of a set of ordered pairs."""
    return sum((d.p[i] * d.p[k] for i, k in pairs), Fraction(0))


def entropy_from_ditset(p: Partition, d: ProbDist) -> Fraction:
    """Brute-force oracle: the product measure summed over the ditset."""
    _check(p, d)
    return pair_measure(ditset(p), d)


@dataclass(frozen=True)
class EntropyReport:
    h_p: Fraction
    h_q: Fraction
    h_join: Fraction
    h_p_given_q: Fraction
    h_q_given_p: Fraction
    mutual: Fraction

    def to_json(self) -> dict:
        return {name: rational_to_json(getattr(self, name)) for name in self.__dataclass_fields__}


def compound_entropies(p: Partition, q: Partition, d: ProbDist) -> EntropyReport:
    """Joint, conditional and mutual logical entropies from ditset set algebra."""
    _check(p, d)
    _check(q, d)
    dp, dq = ditset(p), ditset(q)
    dj = ditset(join(p, q))
    return EntropyReport(
        h_p=pair_measure(dp, d),
        h_q=pair_measure(dq, d),
        h_join=pair_measure(dj, d),
        h_p_given_q=pair_measure(dp - dq, d),
        h_q_given_p=pair_measure(dq - dp, d),
        mutual=pair_measure(dp & dq, d),
    )
