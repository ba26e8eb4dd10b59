"""Graph Laplacian and exact Laplacian solves."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .cuts import VertexFunction
from .errors import InfeasibleError
from .graph import Multigraph, components
from .linalg import solve


def _edge_list(g: Multigraph, edge_ids: Iterable[int] | None):
    ids = range(g.m) if edge_ids is None else edge_ids
    return [g.edges[e] for e in ids if g.edges[e][0] != g.edges[e][1]]


def laplacian_matrix(g: Multigraph, edge_ids: Iterable[int] | None = None) -> list[list[int]]:
    """Integer Laplacian; ``edge_ids`` restricts to a spanning subgraph. Loops contribute 0."""
    L = [[0] * g.n for _ in range(g.n)]
    for u, v in _edge_list(g, edge_ids):
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    return L


def laplacian_apply(f: VertexFunction, edge_ids: Iterable[int] | None = None) -> VertexFunction:
    """``(Δf)(y) = sum over edges {y, z} of f(y) - f(z)``."""
    g = f.host
    out = [Fraction(0)] * g.n
    for u, v in _edge_list(g, edge_ids):
        d = f.values[u] - f.values[v]
        out[u] += d
        out[v] -= d
    return VertexFunction(g, out)


def dirichlet_form(f: VertexFunction, edge_ids: Iterable[int] | None = None) -> Fraction:
    """``<f, Δf>``."""
    lf = laplacian_apply(f, edge_ids)
    return sum((a * b for a, b in zip(f.values, lf.values)), Fraction(0))


def solve_laplacian(c: VertexFunction | Sequence, scale=1, g: Multigraph | None = None,
                    edge_ids: Iterable[int] | None = None) -> VertexFunction:
    """Exact ``f`` with ``scale * Δf = c`` and ``f = 0`` at the first vertex of each component.

    The components are those of the (sub)graph given by ``edge_ids``; for the
    whole connected graph this is the single normalisation ``f(v0) = 0``. The
    reduced system is solved by fraction-free elimination.
    """
    if isinstance(c, VertexFunction):
        g = c.host
        cv = list(c.values)
    else:
        if g is None:
            raise ValueError("pass the host graph with a plain sequence")
        cv = [Fraction(x) for x in c]
    scale = Fraction(scale)
    if scale == 0:
        raise ValueError("scale must be nonzero")
    edge_ids = None if edge_ids is None else list(edge_ids)
    edges = _edge_list(g, edge_ids)
    comps = components(g.n, edges)
    for comp in comps:
        total = sum((cv[v] for v in comp), Fraction(0))
        if total != 0:
            raise InfeasibleError(f"right-hand side sums to {total} on component {comp}, not 0")
    L = laplacian_matrix(g, edge_ids)
    f = [Fraction(0)] * g.n
    for comp in comps:
        free = comp[1:]
        if not free:
            continue
        a = [[scale * L[i][j] for j in free] for i in free]
        b = [cv[i] for i in free]
        for v, x in zip(free, solve(a, b)):
            f[v] = x
    return VertexFunction(g, f)
