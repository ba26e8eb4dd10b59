import pytest

from latflow.errors import DisconnectedGraphError, GraphError
from latflow.graph import (Multigraph, bridges, cycle_basis, enumerate_circuits, format_arcs, genus,
                           is_strongly_connected, parse_arcs, subgraph_genus)

from conftest import arcs


def test_genus_examples(theta, loop, path3):
    assert genus(theta) == 2
    assert genus(path3) == 0
    assert genus(loop) == 1


def test_subgraph_genus(theta):
    assert subgraph_genus(theta, {0, 1}) == 1
    assert subgraph_genus(theta, set()) == 0
    two_triangles = Multigraph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
    assert subgraph_genus(two_triangles, {0, 1, 2, 3, 4, 5}) == 2


def test_bridges(path3, theta):
    assert bridges(path3) == {0, 1}
    assert bridges(theta) == frozenset()
    pendant = Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert bridges(pendant) == {3}


def test_strong_connectivity(theta, loop):
    assert is_strongly_connected(theta, arcs((0, 1), (1, 1), (2, -1)))
    assert not is_strongly_connected(theta, arcs((0, 1), (1, 1), (2, 1)))
    assert is_strongly_connected(loop, arcs((0, 1)))
    assert is_strongly_connected(loop, arcs((0, -1)))


def test_cycle_basis(theta, path3, loop):
    basis = cycle_basis(theta)
    assert len(basis) == 2
    assert all(len(c.arcs) == 2 for c in basis)
    assert cycle_basis(path3) == []
    (c,) = cycle_basis(loop)
    assert len(c.arcs) == 1


def test_enumerate_circuits(theta, triangle, path3):
    assert len(enumerate_circuits(theta)) == 6
    assert len(enumerate_circuits(triangle)) == 2
    assert enumerate_circuits(path3) == []


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraphError) as info:
        Multigraph.from_edges(4, [(0, 1), (2, 3)])
    assert len(info.value.components) == 2


def test_bad_vertex_rejected():
    with pytest.raises(GraphError):
        Multigraph.from_edges(2, [(0, 5)])


def test_arc_text_roundtrip():
    d = arcs((0, 1), (2, -1))
    assert format_arcs(d.arcs) == "0+,2-"
    assert parse_arcs("0+,2-") == d
