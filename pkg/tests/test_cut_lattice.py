from fractions import Fraction

from latflow.corpus import named_graph
from latflow.cuts import VertexFunction, bonds, coboundary, cut_element, cut_rank, is_tension
from latflow.cut_voronoi import (CutCell, cut_delaunay_check, cut_face_poset_combinatorial, quotient_cut_face_poset,
                                 vertex_of_acyclic, verify_cut_side)
from latflow.flows import q
from latflow.graph import Multigraph, enumerate_circuits
from latflow.orientations import enumerate_cac, quotient_cac
from latflow.posets import poset_isomorphic

from conftest import arcs

F = Fraction


def test_coboundary(k2, triangle):
    assert coboundary(VertexFunction.indicator(k2, {1})).values == (1,)
    assert coboundary(VertexFunction(k2, (5, 5))).values == (0,)
    t = coboundary(VertexFunction(triangle, (0, 1, 2)))
    assert is_tension(t, enumerate_circuits(triangle))


def test_cut_element(k2, c4):
    assert cut_element(k2, {0}).values == (1,)
    assert cut_element(k2, {0, 1}).values == (0,)
    assert {abs(x) for x in cut_element(c4, {0, 2}).values} == {1}


def test_cut_rank(k4, c4, path3):
    assert cut_rank(k4, {0}) == 1
    assert cut_rank(c4, {0, 2}) == 3
    assert cut_rank(path3, {0, 2}) == 2


def test_bonds(k3, k2, path3):
    assert len(bonds(k3)) == 6
    assert len(bonds(k2)) == 2
    assert len(bonds(path3)) == 4


def test_vertex_k2(k2):
    v = vertex_of_acyclic(k2, arcs((0, 1)))
    assert v.values == (F(1, 2),) and q(v) == F(1, 4)


def test_vertex_k3_linear_order(k3):
    cell = CutCell(k3)
    d = arcs((0, 1), (1, 1), (2, 1))
    assert cell.vertex_by_laplacian(d) == cell.vertex_by_bonds(d) == (F(1, 3), F(2, 3))
    v = vertex_of_acyclic(k3, d, cell=cell)
    assert v.values == (F(1, 3), F(2, 3), F(1, 3))
    assert q(v) == F(2, 3)


def test_star_vertex_matches_oracle(star3):
    cell = CutCell(star3)
    d = arcs((0, -1), (1, -1), (2, -1))
    assert cell.vertex_coords(d) in set(cell.polytope.vertices)


def test_cut_face_posets(k3, k2, k4):
    assert cut_face_poset_combinatorial(k3).rank_counts() == (6, 6, 1)
    assert cut_face_poset_combinatorial(k2).rank_counts() == (2, 1)
    cell = CutCell(k4)
    assert len(cell.polytope.vertices) == len(cell.acyclic) == 24


def test_cut_quotients(k2, k3):
    assert quotient_cut_face_poset(k2).rank_counts() == (1, 1)
    assert quotient_cut_face_poset(k3).rank_counts() == (2, 3, 1)
    star = named_graph("P3")
    qf = quotient_cut_face_poset(star)
    assert poset_isomorphic(qf, quotient_cac(star, enumerate_cac(star)))[0]


def test_loops_ignored_on_cut_side():
    g = Multigraph.from_edges(2, [(0, 1), (1, 1)])
    r = verify_cut_side(g)
    assert r["ok"] and r["f_vector"] == [2, 1]


def test_path_breaks_cut_element_law(path3):
    r = cut_delaunay_check(path3)
    law = r["cut_element_law"]
    assert not law["ok"]
    # potentials (0, 1, 2) and (0, -1, -2): tension (1, 1), not a cut element, yet the cells touch
    assert law["examples"] == [{"z": (-1, -2), "cut_element": False, "meets": True},
                                 {"z": (1, 2), "cut_element": False, "meets": True}]
    assert r["unit_tension"]["ok"] and r["midpoint"]["ok"] and r["level_components"]["ok"] and r["kappa"]["ok"]
    assert r["ok"]
