"""Finite connected multigraphs, oriented subgraphs, and circuits.

Edges are identified by their position in ``Multigraph.edges``. An *arc* is a
pair ``(edge_id, direction)`` with ``direction`` in ``{+1, -1}``: ``+1`` runs
from the stored ``u`` to the stored ``v``, ``-1`` the other way. A loop has
two arcs as well, one per traversal sense.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .config import DEFAULT_CAPS, Caps
from .errors import DisconnectedGraphError, GraphError, ResourceLimitError

Arc = tuple  # (edge_id, direction)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Multigraph:
    """Connected multigraph with labelled vertices; loops and parallel edges allowed.

    ``edges`` holds pairs of vertex *indices*; use :meth:`from_labels` to build
    from labels.
    """

    vertices: tuple
    edges: tuple
    _adj: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        n = len(vertices)
        if n == 0:
            raise GraphError("a graph needs at least one vertex")
        if len(set(vertices)) != n:
            raise GraphError("vertex labels must be distinct")
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {i} ({u}, {v}) references a missing vertex")
        comps = components(n, edges)
        if len(comps) > 1:
            raise DisconnectedGraphError([[vertices[i] for i in c] for c in comps])
        adj = defaultdict(list)
        for i, (u, v) in enumerate(edges):
            adj[u].append((i, +1))
            if u != v:
                adj[v].append((i, -1))
            else:
                adj[u].append((i, -1))
        object.__setattr__(self, "_adj", {k: tuple(a) for k, a in adj.items()})

    @classmethod
    def from_labels(cls, vertices: Sequence[Hashable], edges: Iterable[tuple]) -> "Multigraph":
        index = {lab: i for i, lab in enumerate(vertices)}
        try:
            idx_edges = [(index[u], index[v]) for u, v in edges]
        except KeyError as exc:
            raise GraphError(f"unknown vertex {exc.args[0]!r}") from None
        return cls(tuple(vertices), tuple(idx_edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Multigraph":
        return cls(tuple(range(n)), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def tail(self, arc: Arc) -> int:
        e, s = arc
        u, v = self.edges[e]
        return u if s > 0 else v

    def head(self, arc: Arc) -> int:
        e, s = arc
        u, v = self.edges[e]
        return v if s > 0 else u

    def out_arcs(self, vertex: int) -> tuple:
        """Arcs leaving ``vertex`` (both arcs of a loop count)."""
        return self._adj.get(vertex, ())

    def degree(self, vertex: int) -> int:
        return len(self._adj.get(vertex, ()))

    def check_edges(self, edge_ids: Iterable[int]) -> frozenset:
        es = frozenset(edge_ids)
        bad = [e for e in es if not (isinstance(e, int) and 0 <= e < self.m)]
        if bad:
            raise GraphError(f"unknown edge id(s) {sorted(bad, key=repr)}")
        return es

    def without_loops(self) -> "Multigraph":
        return Multigraph(self.vertices, tuple(e for e in self.edges if e[0] != e[1]))

    def loop_free_ids(self) -> tuple:
        return tuple(i for i in range(self.m) if not self.is_loop(i))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "edges": [list(e) for e in self.edges],
                "vertices": [v if isinstance(v, (int, str)) else repr(v) for v in self.vertices]}


def components(n: int, edges: Iterable[tuple], vertices: Iterable[int] | None = None) -> list[list[int]]:
    uf = _UnionFind(n)
    for u, v in edges:
        uf.union(u, v)
    groups = defaultdict(list)
    for x in (range(n) if vertices is None else vertices):
        groups[uf.find(x)].append(x)
    return sorted((sorted(g) for g in groups.values()), key=lambda c: c[0])


@dataclass(frozen=True)
class OrientedSubgraph:
    """A set of arcs, at most one per edge."""

    arcs: frozenset

    def __post_init__(self):
        arcs = frozenset((int(e), int(s)) for e, s in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        seen = set()
        for e, s in arcs:
            if s not in (1, -1):
                raise GraphError(f"arc direction must be +1 or -1, got {s}")
            if e in seen:
                raise GraphError(f"edge {e} appears with both directions")
            seen.add(e)

    @classmethod
    def from_mask(cls, mask: int) -> "OrientedSubgraph":
        arcs = []
        i = 0
        while mask:
            if mask & 1:
                arcs.append((i >> 1, -1 if i & 1 else 1))
            mask >>= 1
            i += 1
        return cls(frozenset(arcs))

    @property
    def mask(self) -> int:
        return arcs_mask(self.arcs)

    @property
    def edges(self) -> frozenset:
        return frozenset(e for e, _ in self.arcs)

    def key(self) -> tuple:
        return tuple(sorted(self.arcs))

    def reversed(self) -> "OrientedSubgraph":
        return OrientedSubgraph(frozenset((e, -s) for e, s in self.arcs))

    def direction(self, e: int) -> int:
        for f, s in self.arcs:
            if f == e:
                return s
        return 0

    def issubset(self, other: "OrientedSubgraph") -> bool:
        return self.arcs <= other.arcs

    def validate(self, g: Multigraph) -> "OrientedSubgraph":
        g.check_edges(self.edges)
        return self

    def __len__(self):
        return len(self.arcs)

    def __str__(self):
        return format_arcs(self.arcs)


def arc_bit(arc: Arc) -> int:
    e, s = arc
    return 1 << (2 * e + (0 if s > 0 else 1))


def arcs_mask(arcs: Iterable[Arc]) -> int:
    m = 0
    for a in arcs:
        m |= arc_bit(a)
    return m


def format_arcs(arcs: Iterable[Arc]) -> str:
    return ",".join(f"{e}{'+' if s > 0 else '-'}" for e, s in sorted(arcs))


def parse_arcs(text: str) -> OrientedSubgraph:
    arcs = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        sign = tok[-1]
        if sign not in "+-":
            raise GraphError(f"bad arc token {tok!r}")
        arcs.append((int(tok[:-1]), 1 if sign == "+" else -1))
    return OrientedSubgraph(frozenset(arcs))


@dataclass(frozen=True)
class Circuit:
    """A simple cycle traversed in one direction; ``arcs`` in traversal order."""

    arcs: tuple
    vertices: tuple  # vertices[i] is the tail of arcs[i]

    def __len__(self):
        return len(self.arcs)

    @property
    def orientation(self) -> OrientedSubgraph:
        return OrientedSubgraph(frozenset(self.arcs))

    @property
    def edges(self) -> frozenset:
        return frozenset(e for e, _ in self.arcs)

    @property
    def mask(self) -> int:
        return arcs_mask(self.arcs)

    def reversed(self) -> "Circuit":
        arcs = tuple((e, -s) for e, s in reversed(self.arcs))
        k = len(self.vertices)
        verts = tuple(self.vertices[(k - i) % k] for i in range(k))
        return Circuit(arcs, verts)

    def key(self) -> tuple:
        return (len(self.arcs), tuple(sorted(self.arcs)))


# -- structural predicates -------------------------------------------------

def genus(g: Multigraph) -> int:
    """First Betti number ``|E| - |V| + 1`` of the connected graph."""
    return g.m - g.n + 1


def subgraph_genus(g: Multigraph, edge_ids: Iterable[int]) -> int:
    """Sum of the genera of the components of the edge-induced subgraph."""
    es = g.check_edges(edge_ids)
    if not es:
        return 0
    uf = _UnionFind(g.n)
    touched = set()
    merges = 0
    for e in es:
        u, v = g.edges[e]
        touched.add(u)
        touched.add(v)
        if uf.union(u, v):
            merges += 1
    # |E_H| - |V_H| + c_H, and |V_H| - c_H equals the number of successful unions
    return len(es) - merges


def bridges(g: Multigraph) -> frozenset:
    """Edges whose removal disconnects the graph; loops are never bridges."""
    out = set()
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        rest = [x for i, x in enumerate(g.edges) if i != e]
        uf = _UnionFind(g.n)
        for a, b in rest:
            uf.union(a, b)
        if uf.find(u) != uf.find(v):
            out.add(e)
    return frozenset(out)


def non_bridge_edges(g: Multigraph) -> tuple:
    br = bridges(g)
    return tuple(e for e in range(g.m) if e not in br)


def is_two_edge_connected(g: Multigraph) -> bool:
    return not bridges(g)


def strong_components(g: Multigraph, arcs: Iterable[Arc]) -> list[int]:
    """Strongly connected component id per vertex of the digraph ``arcs`` (Kosaraju)."""
    succ = defaultdict(list)
    pred = defaultdict(list)
    for a in arcs:
        t, h = g.tail(a), g.head(a)
        succ[t].append(h)
        pred[h].append(t)
    order = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [(s, iter(succ[s]))]
        while stack:
            x, it = stack[-1]
            for y in it:
                if not seen[y]:
                    seen[y] = True
                    stack.append((y, iter(succ[y])))
                    break
            else:
                stack.pop()
                order.append(x)
    comp = [-1] * g.n
    c = 0
    for s in reversed(order):
        if comp[s] != -1:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            x = stack.pop()
            for y in pred[x]:
                if comp[y] == -1:
                    comp[y] = c
                    stack.append(y)
        c += 1
    return comp


def is_strongly_connected(g: Multigraph, d: OrientedSubgraph | Iterable[Arc]) -> bool:
    """True iff every arc of ``d`` lies on a directed cycle inside ``d``.

    Equivalently each connected component of the underlying subgraph is
    strongly connected. The empty orientation qualifies.
    """
    arcs = d.arcs if isinstance(d, OrientedSubgraph) else list(d)
    arcs = list(arcs)
    if not arcs:
        return True
    comp = strong_components(g, arcs)
    return all(comp[g.tail(a)] == comp[g.head(a)] for a in arcs)


def is_acyclic(g: Multigraph, d: OrientedSubgraph | Iterable[Arc]) -> bool:
    arcs = list(d.arcs if isinstance(d, OrientedSubgraph) else d)
    if any(g.tail(a) == g.head(a) for a in arcs):
        return False
    comp = strong_components(g, arcs)
    return all(comp[g.tail(a)] != comp[g.head(a)] for a in arcs)


def out_degrees(g: Multigraph, arcs: Iterable[Arc]) -> tuple:
    deg = [0] * g.n
    for a in arcs:
        deg[g.tail(a)] += 1
    return tuple(deg)


def in_degrees(g: Multigraph, arcs: Iterable[Arc]) -> tuple:
    deg = [0] * g.n
    for a in arcs:
        deg[g.head(a)] += 1
    return tuple(deg)


def is_eulerian_orientation(g: Multigraph, arcs: Iterable[Arc]) -> bool:
    arcs = list(arcs)
    return out_degrees(g, arcs) == in_degrees(g, arcs)


# -- circuits ---------------------------------------------------------------

def spanning_tree(g: Multigraph) -> tuple:
    """Edge ids of the spanning tree built by scanning edges in id order."""
    uf = _UnionFind(g.n)
    return tuple(e for e, (u, v) in enumerate(g.edges) if uf.union(u, v))


def _tree_path(g: Multigraph, tree: Sequence[int], src: int, dst: int) -> list:
    """Arcs of the unique tree path from ``src`` to ``dst``."""
    adj = defaultdict(list)
    for e in tree:
        u, v = g.edges[e]
        adj[u].append(((e, 1), v))
        adj[v].append(((e, -1), u))
    prev = {src: None}
    stack = [src]
    while stack:
        x = stack.pop()
        if x == dst:
            break
        for arc, y in adj[x]:
            if y not in prev:
                prev[y] = (arc, x)
                stack.append(y)
    path = []
    x = dst
    while prev[x] is not None:
        arc, x = prev[x]
        path.append(arc)
    return path[::-1]


def cycle_basis(g: Multigraph) -> list[Circuit]:
    """Fundamental circuits of the id-ordered spanning tree.

    Circuit ``j`` traverses the ``j``-th non-tree edge forward, then returns
    along the tree, so its flow is ``+1`` on that edge and ``0`` on every other
    non-tree edge.
    """
    tree = spanning_tree(g)
    tset = set(tree)
    out = []
    for e, (u, v) in enumerate(g.edges):
        if e in tset:
            continue
        back = _tree_path(g, tree, v, u)
        arcs = ((e, 1),) + tuple(back)
        verts = [u]
        for a in arcs[:-1]:
            verts.append(g.head(a))
        out.append(Circuit(arcs, tuple(verts)))
    return out


def enumerate_circuits(g: Multigraph, edge_ids: Iterable[int] | None = None,
                       caps: Caps = DEFAULT_CAPS) -> list[Circuit]:
    """All simple cycles (optionally inside an edge subset), each in both directions.

    Every undirected cycle is found once from its smallest edge id; the result
    is sorted by (length, sorted arcs).
    """
    allowed = set(range(g.m)) if edge_ids is None else set(g.check_edges(edge_ids))
    found: list[Circuit] = []

    def emit(c: Circuit):
        found.append(c)
        found.append(c.reversed())
        if len(found) > caps.max_circuits:
            raise ResourceLimitError("directed circuits", len(found), caps.max_circuits)

    for e0 in sorted(allowed):
        a, b = g.edges[e0]
        if a == b:
            emit(Circuit(((e0, 1),), (a,)))
            continue
        # simple paths b -> a using edges with id > e0
        path_arcs: list = []
        path_verts = [b]
        on_path = {a, b}

        def extend(x):
            for arc in g.out_arcs(x):
                e, _ = arc
                if e <= e0 or e not in allowed or g.is_loop(e):
                    continue
                y = g.head(arc)
                if y == a:
                    arcs = ((e0, 1),) + tuple(path_arcs) + (arc,)
                    emit(Circuit(arcs, (a,) + tuple(path_verts)))
                elif y not in on_path:
                    on_path.add(y)
                    path_arcs.append(arc)
                    path_verts.append(y)
                    extend(y)
                    path_verts.pop()
                    path_arcs.pop()
                    on_path.discard(y)

        extend(b)
    found.sort(key=Circuit.key)
    return found


def directed_circuits_in(circuits: Iterable[Circuit], d: OrientedSubgraph | int) -> list[Circuit]:
    """Circuits whose arcs all lie in ``d``."""
    mask = d if isinstance(d, int) else d.mask
    return [c for c in circuits if c.mask & mask == c.mask]


def orientations_of(edge_ids: Sequence[int]) -> Iterator[OrientedSubgraph]:
    """All 2**k full orientations of the given edges, in a fixed order."""
    edge_ids = list(edge_ids)
    k = len(edge_ids)
    for bits in range(1 << k):
        yield OrientedSubgraph(frozenset(
            (e, -1 if (bits >> i) & 1 else 1) for i, e in enumerate(edge_ids)))
