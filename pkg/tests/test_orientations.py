from latflow.graph import Multigraph, out_degrees
from latflow.orientations import (acyclic_orientations, cac_equivalent, cac_intransitive_pairs, enumerate_cac,
                                  enumerate_sc, quotient_cac, quotient_sc, sc_equivalent, strong_orientations)

from conftest import arcs


def test_sc_theta(theta):
    p = enumerate_sc(theta)
    assert len(p) == 13
    assert p.rank_counts() == (6, 6, 1)
    assert p.grades[p.index(())] == 2


def test_sc_small(loop, path3):
    assert len(enumerate_sc(loop)) == 3
    p = enumerate_sc(path3)
    assert len(p) == 1 and p.keys == [()]


def test_cac_counts(k3, k2, loop):
    p = enumerate_cac(k3)
    assert len(p) == 13 and p.rank_counts() == (6, 6, 1)
    assert len(enumerate_cac(k2)) == 3
    assert len(enumerate_cac(loop)) == 1


def test_sc_equivalence_by_out_degree(theta):
    strong = strong_orientations(theta)
    assert len(strong) == 6
    for a in strong:
        assert sc_equivalent(theta, a, a)
        for b in strong:
            same = out_degrees(theta, a.arcs)[0] == out_degrees(theta, b.arcs)[0]
            assert sc_equivalent(theta, a, b) == same
    assert not sc_equivalent(theta, arcs((0, 1), (1, -1)), arcs((0, 1), (2, -1)))


def test_quotient_sc(theta, loop, path3):
    assert quotient_sc(theta, enumerate_sc(theta)).rank_counts() == (2, 3, 1)
    assert len(quotient_sc(loop, enumerate_sc(loop))) == 2
    assert len(quotient_sc(path3, enumerate_sc(path3))) == 1


def test_cac_equivalence(k2, k3):
    assert cac_equivalent(k2, arcs((0, 1)), arcs((0, -1)))
    # reversing the cut around vertex 0 in the order 0 < 1 < 2
    assert cac_equivalent(k3, arcs((0, 1), (1, 1), (2, 1)), arcs((0, -1), (1, -1), (2, 1)))
    assert not cac_equivalent(k3, arcs((0, 1)), arcs((0, 1), (1, 1), (2, 1)))


def test_quotient_cac(k3, k2):
    q = quotient_cac(k3, enumerate_cac(k3))
    assert q.rank_counts() == (2, 3, 1)
    assert quotient_cac(k2, enumerate_cac(k2)).rank_counts() == (1, 1)


def test_cut_reversal_not_transitive(path3, k3):
    assert cac_intransitive_pairs(path3, enumerate_cac(path3))
    assert not cac_intransitive_pairs(k3, enumerate_cac(k3))


def test_orientation_counts(k4):
    assert len(strong_orientations(k4)) == 24
    assert len(acyclic_orientations(k4)) == 24
    assert len(acyclic_orientations(Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))) == 14
