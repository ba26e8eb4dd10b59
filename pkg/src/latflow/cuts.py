"""Vertex functions, the coboundary, cut elements and bonds.

Conventions: ``coboundary(f)`` on an arc is ``f(head) - f(tail)``, and
``cut_element(C)`` is ``+1`` on arcs leaving ``C``. The two differ by a sign:
``cut_element(C) == coboundary(indicator(V - C))``. Loops carry ``0`` in every
cut-side vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .config import DEFAULT_CAPS, Caps
from .errors import GraphError
from .flows import EdgeVector
from .graph import Multigraph, components


@dataclass(frozen=True)
class VertexFunction:
    host: Multigraph
    values: tuple

    def __post_init__(self):
        vals = tuple(x if isinstance(x, Fraction) else Fraction(x) for x in self.values)
        if len(vals) != self.host.n:
            raise GraphError(f"expected {self.host.n} vertex values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def indicator(cls, g: Multigraph, subset: Iterable[int]) -> "VertexFunction":
        s = check_vertex_subset(g, subset)
        return cls(g, [int(v in s) for v in range(g.n)])

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def __getitem__(self, v):
        return self.values[v]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def to_json(self) -> list[str]:
        return [f"{v.numerator}/{v.denominator}" for v in self.values]


def check_vertex_subset(g: Multigraph, subset: Iterable[int]) -> frozenset:
    s = frozenset(subset)
    bad = [v for v in s if not (isinstance(v, int) and 0 <= v < g.n)]
    if bad:
        raise GraphError(f"unknown vertices {sorted(bad, key=repr)}")
    return s


def coboundary(f: VertexFunction) -> EdgeVector:
    """The tension ``d(f)``: ``f(v) - f(u)`` on the stored edge ``u -> v``."""
    g = f.host
    return EdgeVector(g, [f.values[v] - f.values[u] for u, v in g.edges])


def cut_element(g: Multigraph, subset: Iterable[int]) -> EdgeVector:
    """``+1`` on arcs from ``subset`` to its complement, ``-1`` on the reverse, else ``0``."""
    s = check_vertex_subset(g, subset)
    vals = []
    for u, v in g.edges:
        vals.append((u in s) - (v in s))
    return EdgeVector(g, vals)


def induced_components(g: Multigraph, subset: frozenset) -> int:
    edges = [(u, v) for u, v in g.edges if u in subset and v in subset]
    return len(components(g.n, edges, vertices=sorted(subset)))


def cut_rank(g: Multigraph, subset: Iterable[int]) -> int:
    """``#components(G[C]) + #components(G[V - C]) - 1`` for a proper nonempty ``C``."""
    s = check_vertex_subset(g, subset)
    if not s or len(s) == g.n:
        raise GraphError("cut rank needs a proper nonempty vertex subset")
    rest = frozenset(range(g.n)) - s
    return induced_components(g, s) + induced_components(g, rest) - 1


def proper_subsets(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> Iterator[frozenset]:
    """Proper nonempty vertex subsets in bitmask order."""
    caps.check("max_vertices", g.n, "vertices for subset scan")
    for bits in range(1, (1 << g.n) - 1):
        yield frozenset(v for v in range(g.n) if (bits >> v) & 1)


def bond_subsets(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> list[frozenset]:
    return [s for s in proper_subsets(g, caps) if cut_rank(g, s) == 1]


def bonds(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> list[EdgeVector]:
    """All bond elements, both signs (``C`` and ``V - C`` give negatives)."""
    return [cut_element(g, s) for s in bond_subsets(g, caps)]


def is_tension(x: EdgeVector, circuits) -> bool:
    """Zero sum around every given circuit."""
    return all(sum((x.at(a) for a in c.arcs), Fraction(0)) == 0 for c in circuits)


def cut_arcs(g: Multigraph, subset: frozenset) -> frozenset:
    """Arcs from ``subset`` to its complement."""
    out = set()
    for e, (u, v) in enumerate(g.edges):
        if u in subset and v not in subset:
            out.add((e, 1))
        elif v in subset and u not in subset:
            out.add((e, -1))
    return frozenset(out)
