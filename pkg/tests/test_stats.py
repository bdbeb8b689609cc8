from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

import pytest

from pqm.errors import InvalidOccupation, KExceedsN
from pqm.stats import StatKind, falling_factorial, occupancy_probability, occupations, rising_factorial, state_count

MB, BE, FD = StatKind.MB, StatKind.BE, StatKind.FD


def test_factorials():
    assert falling_factorial(2, 2) == 2
    assert falling_factorial(7, 0) == 1
    assert falling_factorial(5, 3) == 60
    assert rising_factorial(2, 2) == 6
    assert rising_factorial(7, 0) == 1
    assert rising_factorial(3, 2) == 12
    with pytest.raises(KExceedsN):
        falling_factorial(2, 3)


def test_state_counts():
    assert state_count(BE, 2, 2) == 3
    assert state_count(FD, 2, 2) == 1
    assert state_count(MB, 2, 2) == 4
    for n in range(1, 8):
        assert state_count(BE, n, 1) == state_count(FD, n, 1) == state_count(MB, n, 1) == n
    with pytest.raises(KExceedsN):
        state_count(FD, 2, 3)


def test_two_coin_probabilities():
    assert occupancy_probability(MB, 2, 2, (1, 1)) == Fraction(1, 2)
    assert occupancy_probability(BE, 2, 2, (1, 1)) == Fraction(1, 3)
    assert occupancy_probability(FD, 2, 2, (1, 1)) == 1
    assert occupancy_probability("MB", 2, 2, (2, 0)) == Fraction(1, 4)


@pytest.mark.parametrize(
    "kind,theta",
    [(MB, (1, 0)), (MB, (1, 2)), (MB, (3, -1)), (FD, (2, 0)), (BE, (1, 1, 0))],
)
def test_invalid_occupations(kind, theta):
    with pytest.raises(InvalidOccupation):
        occupancy_probability(kind, 2, 2, theta)


def test_probabilities_sum_to_one():
    for n in range(1, 7):
        for k in range(0, 7):
            for kind in StatKind:
                if kind is FD and k > n:
                    continue
                total = sum(occupancy_probability(kind, n, k, t) for t in occupations(n, k, kind))
                assert total == 1, (kind, n, k)


def test_counts_match_brute_force():
    for n in range(1, 6):
        for k in range(0, 5):
            # MB: functions from balls to boxes, grouped by occupation vector
            groups = Counter(tuple(f.count(i) for i in range(n)) for f in product(range(n), repeat=k))
            assert sum(groups.values()) == state_count(MB, n, k)
            for theta, ways in groups.items():
                assert occupancy_probability(MB, n, k, theta) == Fraction(ways, n**k)
            assert len(list(combinations_with_replacement(range(n), k))) == state_count(BE, n, k)
            assert len(list(occupations(n, k, BE))) == state_count(BE, n, k)
            if k <= n:
                assert len(list(combinations(range(n), k))) == state_count(FD, n, k)
                assert len(list(occupations(n, k, FD))) == state_count(FD, n, k)
