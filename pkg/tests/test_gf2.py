import pytest

from pqm.dsd import Kind
from pqm.errors import AmbientMismatch, DimensionMismatch, NotADSD, OddDimension, RankDeficient
from pqm.gf2 import (
    GF2Basis,
    GF2Vector,
    basis_change_matrix,
    common_eigenvectors_brute_force,
    complement_rank,
    dsd_from_gf2_attribute,
    gf2_classify,
    gf2_dsd_to_partition,
    hat_basis,
    is_involution,
    partition_dsd_roundtrip,
    partition_to_gf2_dsd,
    rebase,
    standard_basis,
)
from pqm.dsd import DSD, Subspace
from pqm.partitions import Universe, discrete, indiscrete, parse_partition

U4 = Universe.letters(4)


def test_vector_validation():
    with pytest.raises(DimensionMismatch):
        GF2Vector(3, 0b1000)
    assert (GF2Vector(3, 0b011) + GF2Vector(3, 0b110)).bits == 0b101
    with pytest.raises(RankDeficient):
        GF2Basis(2, (GF2Vector(2, 1), GF2Vector(2, 1)))


def test_hat_basis_examples():
    assert [v.labels(U4) for v in hat_basis(4).vectors] == [["b", "c", "d"], ["a", "c", "d"], ["a", "b", "d"], ["a", "b", "c"]]
    u2 = Universe.letters(2)
    assert [v.labels(u2) for v in hat_basis(2).vectors] == [["b"], ["a"]]
    with pytest.raises(OddDimension):
        hat_basis(3)
    assert complement_rank(3) == 2


def test_attribute_dsds():
    f = dsd_from_gf2_attribute(standard_basis(4), "abcd")
    assert [p.vectors() for p in f.parts] == [[1], [2], [4], [8]]
    g = dsd_from_gf2_attribute(hat_basis(4), "abcd")
    assert [p.vectors() for p in g.parts] == [[0b1110], [0b1101], [0b1011], [0b0111]]
    two = dsd_from_gf2_attribute(standard_basis(4), (1, 1, 2, 2))
    assert two.dims() == [2, 2]
    with pytest.raises(RankDeficient):
        dsd_from_gf2_attribute([1, 1, 2, 4], (1, 2, 3, 4))


def test_conjugate_and_commuting():
    f = dsd_from_gf2_attribute(standard_basis(4), "abcd")
    g = dsd_from_gf2_attribute(hat_basis(4), "abcd")
    assert gf2_classify(f, g).kind is Kind.CONJUGATE
    assert common_eigenvectors_brute_force(f, g) == []
    assert gf2_classify(f, f).kind is Kind.COMMUTING


def test_split_pair_matches_brute_force():
    f = dsd_from_gf2_attribute(standard_basis(4), (1, 1, 2, 2))
    g = dsd_from_gf2_attribute(hat_basis(4), (1, 1, 2, 2))
    c = gf2_classify(f, g)
    common = common_eigenvectors_brute_force(f, g)
    assert common == [0b0011, 0b1100]
    assert c.se_dim == 2 and c.kind is Kind.INCOMPATIBLE


def test_classify_rejects_mismatch():
    f = dsd_from_gf2_attribute(standard_basis(4), "abcd")
    with pytest.raises(AmbientMismatch):
        gf2_classify(f, dsd_from_gf2_attribute(standard_basis(2), "ab"))
    r = DSD((Subspace.whole("rational", 4),))
    with pytest.raises(AmbientMismatch):
        gf2_classify(f, r)


def test_partition_round_trip_examples():
    assert partition_dsd_roundtrip(parse_partition("abc|d", U4)).dims() == [3, 1]
    assert partition_dsd_roundtrip(discrete(U4)).dims() == [1, 1, 1, 1]
    assert partition_dsd_roundtrip(indiscrete(U4)).dims() == [4]
    p = parse_partition("ac|b|d", U4)
    assert gf2_dsd_to_partition(partition_to_gf2_dsd(p), U4) == p


def test_non_coordinate_dsd_has_no_partition():
    d = dsd_from_gf2_attribute(hat_basis(4), "abcd")
    with pytest.raises(NotADSD):
        gf2_dsd_to_partition(d, U4)


def test_rebase_and_involution():
    hats = hat_basis(4)
    # {a} is b-hat + c-hat + d-hat, and {a,b,c} is d-hat
    assert rebase(0b0001, hats) == 0b1110
    assert rebase(0b0111, hats) == 0b1000
    assert rebase(0b0101, standard_basis(4)) == 0b0101
    assert is_involution(basis_change_matrix(hats), 4)
    assert not is_involution(basis_change_matrix([0b0011, 0b0110, 0b0100, 0b1000]), 4)
