"""Randomised checks on small multigraphs, with networkx as an outside reference."""
import random
from fractions import Fraction

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from latflow.corpus import random_multigraph
from latflow.covering import covering_number_cut, covering_number_flow, flow_identities, flow_orientation_value
from latflow.cut_voronoi import CutCell
from latflow.flows import circuit_flow, is_flow, q
from latflow.graph import bridges, enumerate_circuits, genus, is_strongly_connected, orientations_of
from latflow.orientations import acyclic_orientations, strong_orientations
from latflow.voronoi import FlowCell

graphs = st.builds(lambda seed, v, e: random_multigraph(random.Random(seed), v, e),
                   st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 6))


def to_nx(g):
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    for e, (u, v) in enumerate(g.edges):
        h.add_edge(u, v, key=e)
    return h


def to_nx_directed(g, d):
    h = nx.MultiDiGraph()
    h.add_nodes_from(range(g.n))
    for e, s in d.arcs:
        u, v = g.edges[e]
        h.add_edge(*((u, v) if s > 0 else (v, u)), key=e)
    return h


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_genus_and_bridges_match_networkx(g):
    h = to_nx(g)
    assert genus(g) == g.m - g.n + nx.number_connected_components(h)
    simple = nx.Graph(h)
    loops = {e for e in range(g.m) if g.is_loop(e)}
    parallel = {e for e, (u, v) in enumerate(g.edges) if h.number_of_edges(u, v) > 1}
    expect = {e for e, (u, v) in enumerate(g.edges)
              if e not in loops | parallel and (min(u, v), max(u, v)) in
              {(min(a, b), max(a, b)) for a, b in nx.bridges(simple)}}
    assert bridges(g) == expect


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_strong_connectivity_matches_networkx(g):
    edges = [e for e in range(g.m)]
    for d in list(orientations_of(edges))[:64]:
        h = to_nx_directed(g, d)
        touched = {x for e in range(g.m) for x in g.edges[e]}
        sub = h.subgraph(touched)
        want = nx.is_strongly_connected(sub) if touched else True
        assert is_strongly_connected(g, d) == want


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_circuits_match_networkx(g):
    ours = enumerate_circuits(g)
    for c in ours:
        assert is_flow(circuit_flow(g, c)) and q(circuit_flow(g, c)) == len(c.arcs)
    # undirected circuits = simple cycles of the multigraph (loops and digons included)
    h = nx.MultiDiGraph()
    h.add_nodes_from(range(g.n))
    for e, (u, v) in enumerate(g.edges):
        h.add_edge(u, v, key=(e, 1))
        h.add_edge(v, u, key=(e, -1))
    directed = set()
    for cyc in nx.simple_cycles(h):
        if len(cyc) == 2:
            a, b = cyc
            keys = [(k, (a, b)) for k in h[a][b]] if a != b else []
            back = [k for k in h[b][a]]
            for k1, _ in keys:
                for k2 in back:
                    if k1[0] != k2[0]:
                        directed.add(frozenset([k1, k2]))
        elif len(cyc) == 1:
            for k in h[cyc[0]][cyc[0]]:
                directed.add(frozenset([k]))
        else:
            def expand(i, acc):
                if i == len(cyc):
                    directed.add(frozenset(acc))
                    return
                a, b = cyc[i], cyc[(i + 1) % len(cyc)]
                for k in h[a][b]:
                    expand(i + 1, acc + [k])
            expand(0, [])
    assert {frozenset(c.arcs) for c in ours} == directed


@settings(max_examples=25, deadline=None)
@given(graphs)
def test_flow_vertices_satisfy_identities(g):
    cell = FlowCell(g)
    for d in cell.strong[:20]:
        val = flow_orientation_value(g, d, cell)
        assert all(flow_identities(g, val, cell).values())
        assert 2 * val.q == val.l1


@settings(max_examples=25, deadline=None)
@given(graphs)
def test_covering_values_bounded_by_oracle(g):
    flow = covering_number_flow(g)
    assert flow.value == flow.oracle and flow.ok
    cut = covering_number_cut(g)
    assert cut.value == cut.oracle and cut.ok
    assert flow.value <= Fraction(g.m, 4) and cut.value <= Fraction(g.m, 4)


@settings(max_examples=25, deadline=None)
@given(graphs)
def test_orientation_counts_match_networkx(g):
    strong = strong_orientations(g)
    acyc = acyclic_orientations(g)
    nonbridge = [e for e in range(g.m) if e not in bridges(g)]

    def is_strong(d):
        h = to_nx_directed(g, d)
        return all(nx.is_strongly_connected(h.subgraph(c)) for c in nx.weakly_connected_components(h))

    brute_strong = sum(1 for d in orientations_of(nonbridge) if is_strong(d))
    assert len(strong) == brute_strong
    loopfree = [e for e in range(g.m) if not g.is_loop(e)]
    brute_acyc = sum(1 for d in orientations_of(loopfree) if nx.is_directed_acyclic_graph(to_nx_directed(g, d)))
    assert len(acyc) == brute_acyc
    assert len(CutCell(g).vertices) == len(acyc)
