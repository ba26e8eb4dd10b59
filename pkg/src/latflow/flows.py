"""Edge vectors, the flow space and the lattice of integer flows."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GraphError, LatflowError
from .graph import (Circuit, Multigraph, OrientedSubgraph, cycle_basis, is_eulerian_orientation,
                    spanning_tree)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("EdgeVector values must be exact; got a float")
    return Fraction(x)


@dataclass(frozen=True, eq=False)
class EdgeVector:
    """Exact rational value per edge under the stored reference orientation.

    The value on the reversed arc is the negation; it is computed on demand by
    :meth:`at` rather than stored.
    """

    host: Multigraph
    values: tuple

    def __post_init__(self):
        vals = tuple(_frac(x) for x in self.values)
        if len(vals) != self.host.m:
            raise GraphError(f"expected {self.host.m} edge values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, g: Multigraph) -> "EdgeVector":
        return cls(g, (0,) * g.m)

    @classmethod
    def from_arcs(cls, g: Multigraph, arcs: Iterable, value=1) -> "EdgeVector":
        vals = [0] * g.m
        for e, s in arcs:
            vals[e] += s * value
        return cls(g, vals)

    def at(self, arc) -> Fraction:
        e, s = arc
        return self.values[e] if s > 0 else -self.values[e]

    def __getitem__(self, e: int) -> Fraction:
        return self.values[e]

    def __len__(self):
        return len(self.values)

    def _check(self, other: "EdgeVector"):
        if not isinstance(other, EdgeVector):
            return NotImplemented
        if other.host is not self.host and other.host != self.host:
            raise GraphError("edge vectors live on different graphs")

    def __add__(self, other):
        self._check(other)
        return EdgeVector(self.host, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return EdgeVector(self.host, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return EdgeVector(self.host, [-a for a in self.values])

    def __mul__(self, c):
        c = _frac(c)
        return EdgeVector(self.host, [c * a for a in self.values])

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / _frac(c))

    def __eq__(self, other):
        if not isinstance(other, EdgeVector):
            return NotImplemented
        return self.values == other.values and (other.host is self.host or other.host == self.host)

    def __hash__(self):
        return hash(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def l1(self) -> Fraction:
        return sum((abs(v) for v in self.values), Fraction(0))

    def to_json(self) -> list[str]:
        return [f"{v.numerator}/{v.denominator}" for v in self.values]

    @classmethod
    def from_json(cls, g: Multigraph, data: Sequence[str]) -> "EdgeVector":
        return cls(g, [Fraction(s) for s in data])

    def __repr__(self):
        return f"EdgeVector({[str(v) for v in self.values]})"


def inner_product(a: EdgeVector, b: EdgeVector) -> Fraction:
    if a.host is not b.host and a.host != b.host:
        raise GraphError("edge vectors live on different graphs")
    return sum((x * y for x, y in zip(a.values, b.values)), Fraction(0))


def q(a: EdgeVector) -> Fraction:
    """The quadratic form ``<a, a>``."""
    return inner_product(a, a)


def boundary(x: EdgeVector) -> list[Fraction]:
    """Net outflow per vertex: sum of ``x`` over the arcs leaving each vertex."""
    g = x.host
    out = [Fraction(0)] * g.n
    for e, (u, v) in enumerate(g.edges):
        if u != v:
            out[u] += x.values[e]
            out[v] -= x.values[e]
    return out


def is_flow(x: EdgeVector) -> bool:
    return not any(boundary(x))


def circuit_flow(g: Multigraph, c: Circuit | OrientedSubgraph) -> EdgeVector:
    return EdgeVector.from_arcs(g, c.arcs)


def flow_basis(g: Multigraph) -> list[EdgeVector]:
    """Circuit flows of the fundamental cycles; a Z-basis of the integer flows."""
    return [circuit_flow(g, c) for c in cycle_basis(g)]


def gram_matrix(vectors: Sequence[EdgeVector]) -> list[list[Fraction]]:
    return [[inner_product(a, b) for b in vectors] for a in vectors]


def non_tree_edges(g: Multigraph) -> tuple:
    tree = set(spanning_tree(g))
    return tuple(e for e in range(g.m) if e not in tree)


def cycle_coordinates(x: EdgeVector) -> tuple:
    """Coordinates of a flow in :func:`flow_basis`.

    Each fundamental circuit carries ``+1`` on its own non-tree edge and ``0``
    on the others, so the coordinates are just the non-tree entries.
    """
    if not is_flow(x):
        raise LatflowError("cycle coordinates are only defined for flows")
    return tuple(x.values[e] for e in non_tree_edges(x.host))


def flow_from_coordinates(g: Multigraph, coords: Sequence, basis: Sequence[EdgeVector] | None = None) -> EdgeVector:
    basis = flow_basis(g) if basis is None else basis
    if len(coords) != len(basis):
        raise GraphError(f"expected {len(basis)} coordinates, got {len(coords)}")
    vals = [Fraction(0)] * g.m
    for c, b in zip(coords, basis):
        if c:
            for e, bv in enumerate(b.values):
                if bv:
                    vals[e] += c * bv
    return EdgeVector(g, vals)


def support(x: EdgeVector) -> OrientedSubgraph:
    """Arcs on which ``x`` is strictly positive."""
    return OrientedSubgraph(frozenset((e, 1 if v > 0 else -1) for e, v in enumerate(x.values) if v))


def is_eulerian_element(x: EdgeVector) -> bool:
    """Flow with every entry in {0, 1, -1}."""
    if not is_flow(x):
        raise LatflowError("is_eulerian_element expects a flow")
    return all(v in (0, 1, -1) for v in x.values)


def circuit_decomposition(x: EdgeVector, first: Circuit | OrientedSubgraph | None = None) -> list[EdgeVector]:
    """Split an integer flow into circuit flows supported inside ``support(x)``.

    Greedy peeling: walk forward from the smallest available arc, always taking
    the smallest outgoing arc id, until a vertex repeats; remove that circuit.
    ``first`` optionally names a circuit of ``support(x)`` to peel before the
    rest.
    """
    g = x.host
    if not x.is_integral() or not is_flow(x):
        raise LatflowError("circuit_decomposition expects an integer flow")
    remaining = Counter()
    for e, v in enumerate(x.values):
        if v:
            remaining[(e, 1 if v > 0 else -1)] = abs(int(v))
    out = []
    if first is not None:
        arcs = list(first.arcs)
        if any(remaining[a] <= 0 for a in arcs):
            raise LatflowError("designated circuit is not contained in the support")
        if not isinstance(first, Circuit) and not is_eulerian_orientation(g, arcs):
            raise LatflowError("designated arcs do not form a circuit")
        for a in arcs:
            remaining[a] -= 1
        out.append(EdgeVector.from_arcs(g, arcs))

    while True:
        live = sorted(a for a, k in remaining.items() if k > 0)
        if not live:
            break
        start = live[0]
        walk_arcs = []
        walk_verts = [g.tail(start)]
        pos = {walk_verts[0]: 0}
        arc = start
        while True:
            walk_arcs.append(arc)
            h = g.head(arc)
            if h in pos:
                cyc = walk_arcs[pos[h]:]
                break
            pos[h] = len(walk_verts)
            walk_verts.append(h)
            nxt = min((a for a in g.out_arcs(h) if remaining[a] > 0), default=None)
            if nxt is None:  # cannot happen for a flow
                raise LatflowError("flow conservation violated during peeling")
            arc = nxt
        for a in cyc:
            remaining[a] -= 1
        out.append(EdgeVector.from_arcs(g, cyc))
    return out
