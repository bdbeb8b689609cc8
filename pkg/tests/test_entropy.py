from fractions import Fraction

import pytest

from pqm.entropy import ProbDist, block_prob, compound_entropies, entropy_from_ditset, logical_entropy
from pqm.errors import IndexOutOfRange, InvalidDistribution, UniverseMismatch
from pqm.partitions import Universe, discrete, indiscrete, parse_partition

U4 = Universe.letters(4)
EQ4 = ProbDist.uniform(U4)


def P(text, u=U4):
    return parse_partition(text, u)


def test_probdist_validation():
    with pytest.raises(InvalidDistribution):
        ProbDist(U4, (Fraction(1, 2),) * 4)
    with pytest.raises(InvalidDistribution):
        ProbDist(U4, (0.25, 0.25, 0.25, 0.25))
    with pytest.raises(InvalidDistribution):
        ProbDist(U4, (Fraction(3, 2), Fraction(-1, 2), 0, 0))
    assert ProbDist.from_weights(U4, [1, 1, 2, 0]).p == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 0)


def test_block_prob():
    assert block_prob(EQ4, [0, 1, 2]) == Fraction(3, 4)
    assert block_prob(EQ4, range(4)) == 1
    u3 = Universe(3)
    d = ProbDist(u3, (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
    assert block_prob(d, [1, 2]) == Fraction(1, 2)
    with pytest.raises(IndexOutOfRange):
        block_prob(d, [3])


def test_logical_entropy_examples():
    assert logical_entropy(indiscrete(U4), EQ4) == 0
    for n in range(1, 7):
        u = Universe(n)
        assert logical_entropy(discrete(u), ProbDist.uniform(u)) == 1 - Fraction(1, n)
    assert logical_entropy(P("abc|d"), EQ4) == Fraction(3, 8)


def test_entropy_from_ditset_examples():
    assert entropy_from_ditset(P("ac|b|d"), EQ4) == Fraction(5, 8)
    assert entropy_from_ditset(indiscrete(U4), EQ4) == 0
    u3 = Universe.letters(3)
    assert entropy_from_ditset(P("ab|c", u3), ProbDist.uniform(u3)) == Fraction(4, 9)


def test_universe_mismatch():
    u3 = Universe.letters(3)
    with pytest.raises(UniverseMismatch):
        logical_entropy(P("ab|c", u3), EQ4)


def test_compound_example():
    p, q = P("ac|bd"), P("abc|d")
    r = compound_entropies(p, q, EQ4)
    assert r.h_join == Fraction(5, 8)
    assert r.h_q_given_p == r.h_join - logical_entropy(p, EQ4)
    assert r.h_join == r.h_p_given_q + r.h_q_given_p + r.mutual
    assert r.h_join == r.h_p + r.h_q - r.mutual


def test_compound_with_bottom_and_self():
    p = P("ac|bd")
    r = compound_entropies(p, indiscrete(U4), EQ4)
    assert r.h_join == r.h_p and r.mutual == 0
    r = compound_entropies(p, p, EQ4)
    assert r.mutual == r.h_p and r.h_p_given_q == 0 and r.h_q_given_p == 0


def test_report_json():
    r = compound_entropies(P("ac|bd"), P("abc|d"), EQ4)
    assert r.to_json()["h_join"] == {"num": 5, "den": 8}
