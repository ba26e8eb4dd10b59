from fractions import Fraction

from latflow.cells import intersection_scan
from latflow.corpus import named_graph
from latflow.flows import EdgeVector, q
from latflow.graph import Multigraph
from latflow.voronoi import (FlowCell, closest_lattice_point, face_poset_combinatorial, face_poset_geometric,
                             quotient_face_poset, verify_flow_side, vertex_of_orientation, voronoi_halfspaces,
                             xi1)

from conftest import arcs

F = Fraction


def test_xi1_counts(theta, triangle, k4):
    assert len(xi1(theta)) == 6
    assert len(xi1(triangle)) == 2
    assert len(xi1(k4)) == 14


def test_loop_segment(loop):
    assert sorted(voronoi_halfspaces(loop).vertices) == [(F(-1, 2),), (F(1, 2),)]


def test_cycle_endpoints():
    for n in range(3, 9):
        g = named_graph(f"C{n}")
        cell = FlowCell(g)
        assert len(cell.vertices) == 2
        assert {cell.q_coords(v) for v in cell.vertices} == {F(n, 4)}


def test_theta_hexagon(theta):
    p = voronoi_halfspaces(theta)
    assert len(p.halfspaces) == 6
    assert p.face_lattice.rank_counts() == (6, 6, 1)


def test_vertex_examples(theta, triangle, loop):
    v = vertex_of_orientation(theta, arcs((0, 1), (1, 1), (2, -1)))
    assert v.values == (F(1, 3), F(1, 3), F(-2, 3))
    assert q(v) == F(2, 3)
    v = vertex_of_orientation(triangle, arcs((0, 1), (1, 1), (2, 1)))
    assert v.values == (F(1, 2),) * 3 and q(v) == F(3, 4)
    assert vertex_of_orientation(loop, arcs((0, 1))).values == (F(1, 2),)


def test_vertex_routes_agree(k4):
    cell = FlowCell(k4)
    for d in cell.strong:
        assert cell.vertex_by_projection(d) == cell.vertex_by_circuits(d)


def test_face_posets(theta, loop, k4):
    assert face_poset_combinatorial(theta).rank_counts() == (6, 6, 1)
    assert face_poset_combinatorial(loop).rank_counts() == (2, 1)
    assert face_poset_geometric(k4).rank_counts() == (24, 36, 14, 1)


def test_closest_lattice_point(theta):
    zero = EdgeVector.zero(theta)
    assert closest_lattice_point(zero) == [zero]
    lam = EdgeVector(theta, (1, 1, -2))
    assert closest_lattice_point(lam) == [lam]
    ties = closest_lattice_point(vertex_of_orientation(theta, arcs((0, 1), (1, 1), (2, -1))))
    assert len(ties) == 3 and zero in ties


def _meeting_codim(g, edge_values):
    cell = FlowCell(g)
    geo = face_poset_geometric(g, cell=cell)
    Z, _, meets = intersection_scan(cell.polytope, 2)
    target = cell.coords(EdgeVector(g, edge_values))
    for r in range(len(Z)):
        if tuple(int(x) for x in Z[r]) == tuple(target):
            if r not in meets:
                return None
            dim = {m: geo.grades[i] for i, m in enumerate(geo.vertex_masks)}[meets[r]]
            return cell.dimension - dim
    raise AssertionError("point outside the scanned box")


def test_translates_of_theta_cell(theta):
    assert _meeting_codim(theta, (1, 0, -1)) == 1
    assert _meeting_codim(theta, (1, 1, -2)) is None
    assert _meeting_codim(theta, (0, 0, 0)) == 0


def test_quotients(theta, loop, path3):
    assert quotient_face_poset(theta).rank_counts() == (2, 3, 1)
    assert quotient_face_poset(loop).rank_counts() == (1, 1)
    assert quotient_face_poset(path3).rank_counts() == (1,)


def test_verify_theta(theta):
    r = verify_flow_side(theta, witness=True)
    assert r["ok"] and r["f_vector"] == [6, 6, 1]
    assert len(r["witness"]) == 13 and r["first_mismatch"] is None


def test_bridge_and_loop_mix():
    g = Multigraph.from_edges(3, [(0, 1), (0, 1), (1, 2), (2, 2)])
    r = verify_flow_side(g)
    assert r["ok"] and r["f_vector"] == [4, 4, 1]
