"""Covering numbers of the flow and cut lattices, and the orientation problems behind them.

Flow side: the squared covering radius is the largest ``q(v^D)`` over strong
orientations ``D``. With ``Δf = d_out - d_in`` one has
``q(v^D) = ε/4 - <f, Δf>/4`` (``ε`` = number of non-bridge edges), so the
maximisers are the orientations minimising ``<f, Δf>``.

Cut side: the squared covering radius is the largest ``q(ν^D) = <f, Δf>`` over
acyclic orientations, with ``2Δf = d_in - d_out``.

Reports carry the direct value, the independent polytope-vertex value, and
a few closed forms (including the half-scale variants ``ε/2 - <f, Δf>/2`` and
``|E|/2``), each flagged by whether it matches.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .config import DEFAULT_CAPS, Caps
from .cut_voronoi import CutCell
from .cuts import VertexFunction, proper_subsets
from .errors import GraphError, LatflowError, ResourceLimitError, VerificationError
from .flows import q
from .graph import (Multigraph, OrientedSubgraph, bridges,
                    in_degrees, is_strongly_connected, is_two_edge_connected,
                    non_bridge_edges, orientations_of, out_degrees)
from .laplacian import dirichlet_form, laplacian_apply, solve_laplacian
from .voronoi import FlowCell


def fraction_json(x: Fraction) -> dict:
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": f"{float(x):.6f}"}


@dataclass(frozen=True)
class ExcessFunction:
    """Integer ``c(y) = d_in(y) - d_out(y)`` per vertex."""

    host: Multigraph
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) != self.host.n:
            raise GraphError(f"expected {self.host.n} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, g: Multigraph, d: OrientedSubgraph) -> "ExcessFunction":
        return cls(g, [a - b for a, b in zip(in_degrees(g, d.arcs), out_degrees(g, d.arcs))])


@dataclass
class OrientationValue:
    """Per-orientation quantities; ``dirichlet`` is ``<f, Δf>``."""

    orientation: OrientedSubgraph
    q: Fraction
    dirichlet: Fraction
    potential: VertexFunction
    l1: Fraction | None = None


@dataclass
class CoveringReport:
    side: str
    value: Fraction
    argmax: list
    oracle: Fraction | None
    exhaustive: bool = True
    closed_forms: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and (self.oracle is None or self.oracle == self.value)

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "value": fraction_json(self.value),
            "lower_bound_only": not self.exhaustive,
            "argmax": [str(d) for d in self.argmax],
            "oracle": None if self.oracle is None else fraction_json(self.oracle),
            "closed_forms": {k: {"value": fraction_json(v["value"]), "matches": v["value"] == self.value,
                                 "applies": v.get("applies", True)}
                             for k, v in self.closed_forms.items()},
            "checks": dict(self.checks),
            "ok": self.ok,
        }


# -- flow side ------------------------------------------------------------------

def flow_potential(g: Multigraph, d: OrientedSubgraph) -> VertexFunction:
    """``f`` with ``Δf = d_out - d_in`` on the graph without bridges."""
    c = [a - b for a, b in zip(out_degrees(g, d.arcs), in_degrees(g, d.arcs))]
    return solve_laplacian(c, scale=1, g=g, edge_ids=non_bridge_edges(g))


def flow_orientation_value(g: Multigraph, d: OrientedSubgraph, cell: FlowCell) -> OrientationValue:
    v = cell.to_edges(cell.vertex_coords(d))
    f = flow_potential(g, d)
    nb = non_bridge_edges(g)
    return OrientationValue(d, q(v), dirichlet_form(f, nb), f,
                            l1=sum((v.at(a) for a in d.arcs), Fraction(0)))


def flow_identities(g: Multigraph, val: OrientationValue, cell: FlowCell) -> dict:
    """The ℓ1 identity, the tension and potential laws, and the quarter-scale closed form."""
    d = val.orientation
    v = cell.to_edges(cell.vertex_coords(d))
    eps = len(non_bridge_edges(g))
    mu = {a: 2 * v.at(a) - 1 for a in d.arcs}
    circuits = [c for c in cell.circuits if c.mask & d.mask == c.mask]
    f = val.potential
    out = {
        "l1": 2 * val.q == val.l1,
        "tension": all(sum((mu[a] for a in c.arcs), Fraction(0)) == 0 for c in circuits),
        "potential": all(f.values[g.head(a)] - f.values[g.tail(a)] == mu[a] for a in d.arcs),
        "laplacian": list(laplacian_apply(f, non_bridge_edges(g)).values)
        == [Fraction(a - b) for a, b in zip(out_degrees(g, d.arcs), in_degrees(g, d.arcs))],
        "quarter_form": val.q == Fraction(eps, 4) - val.dirichlet / 4,
    }
    return out


def _flow_values(g: Multigraph, caps: Caps, cell: FlowCell) -> list[OrientationValue]:
    return [flow_orientation_value(g, d, cell) for d in cell.strong]


def covering_number_flow(g: Multigraph, caps: Caps = DEFAULT_CAPS, local_search_seed: int = 0,
                         cell: FlowCell | None = None) -> CoveringReport:
    """Exact ``max q(v^D)`` over strong orientations of ``g`` minus its bridges.

    If the orientation scan exceeds the caps, a directed-circuit reversal local
    search gives a lower bound and the report says so.
    """
    cell = cell or FlowCell(g, caps)
    eps = len(non_bridge_edges(g))
    try:
        vals = _flow_values(g, caps, cell)
    except ResourceLimitError:
        best = local_search_flow(g, seed=local_search_seed, caps=caps)
        return CoveringReport("flow", best.q, [best.orientation], None, exhaustive=False,
                              checks={"quarter_form": best.q == Fraction(eps, 4) - best.dirichlet / 4})
    value = max(v.q for v in vals)
    argmax = sorted((v.orientation for v in vals if v.q == value), key=OrientedSubgraph.key)
    min_dir = min(v.dirichlet for v in vals)
    argmin = sorted((v.orientation for v in vals if v.dirichlet == min_dir), key=OrientedSubgraph.key)
    checks = {"argmax_equals_argmin": argmax == argmin}
    ident = {}
    for v in vals:
        for k, ok in flow_identities(g, v, cell).items():
            ident[k] = ident.get(k, True) and ok
    checks.update(ident)
    try:
        oracle = max((cell.q_coords(y) for y in cell.polytope.vertices), default=Fraction(0))
    except ResourceLimitError:
        oracle = None
    eulerian = all(g.degree(y) % 2 == 0 for y in range(g.n)) and not bridges(g)
    closed = {
        "quarter_form": {"value": Fraction(eps, 4) - min_dir / 4},
        "half_form": {"value": Fraction(eps, 2) - min_dir / 2},
        "eulerian_half_edges": {"value": Fraction(g.m, 2), "applies": eulerian},
    }
    return CoveringReport("flow", value, argmax, oracle, True, closed, checks)


def well_balanced_search(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> tuple[OrientedSubgraph, Fraction, list]:
    """Strong orientation minimising ``<f, Δf>``; returns ``(first, value, all minimisers)``.

    Raises if the minimisers differ from the maximisers of ``q(v^D)``.
    """
    cell = FlowCell(g, caps)
    vals = _flow_values(g, caps, cell)
    m = min(v.dirichlet for v in vals)
    mins = sorted((v.orientation for v in vals if v.dirichlet == m), key=OrientedSubgraph.key)
    top = max(v.q for v in vals)
    maxs = sorted((v.orientation for v in vals if v.q == top), key=OrientedSubgraph.key)
    if mins != maxs:
        raise VerificationError("minimisers of <f, Δf> differ from maximisers of q(v^D)")
    return mins[0], m, mins


def _robbins_orientation(g: Multigraph) -> OrientedSubgraph:
    """A strong orientation of ``g`` minus bridges: DFS tree arcs downward, other arcs upward."""
    nb = set(non_bridge_edges(g))
    adj = [[] for _ in range(g.n)]
    for e in sorted(nb):
        u, v = g.edges[e]
        adj[u].append((e, v, 1))
        adj[v].append((e, u, -1))
    depth = [None] * g.n
    arcs = {}
    for root in range(g.n):
        if depth[root] is not None:
            continue
        depth[root] = 0
        stack = [(root, iter(adj[root]))]
        while stack:
            x, it = stack[-1]
            for e, y, s in it:
                if e in arcs:
                    continue
                if depth[y] is None:
                    depth[y] = depth[x] + 1
                    arcs[e] = s
                    stack.append((y, iter(adj[y])))
                    break
                # back or loop edge: point it from the deeper end to the shallower one
                arcs[e] = s if depth[x] >= depth[y] else -s
            else:
                stack.pop()
    return OrientedSubgraph(frozenset(arcs.items()))


def local_search_flow(g: Multigraph, seed: int = 0, rounds: int = 200, caps: Caps = DEFAULT_CAPS) -> OrientationValue:
    """Hill-climb ``q(v^D)`` by reversing directed circuits (which keeps ``D`` strong)."""
    cell = FlowCell(g, caps)
    rng = random.Random(seed)
    d = _robbins_orientation(g)
    if not is_strongly_connected(g, d):
        raise LatflowError("could not build a strong orientation")
    cur = flow_orientation_value(g, d, cell)
    circuits = cell.circuits
    for _ in range(rounds):
        inside = [c for c in circuits if c.mask & cur.orientation.mask == c.mask]
        rng.shuffle(inside)
        improved = False
        for c in inside:
            rev = set(c.arcs)
            arcs = frozenset((e, -s) if (e, s) in rev else (e, s) for e, s in cur.orientation.arcs)
            cand = flow_orientation_value(g, OrientedSubgraph(arcs), cell)
            if cand.q > cur.q:
                cur, improved = cand, True
                break
        if not improved:
            break
    return cur


# -- excess functions -----------------------------------------------------------

def excess_feasible(c: ExcessFunction, caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether some strong orientation has ``d_in - d_out = c``.

    Conditions: total zero; ``c(y)`` has the parity of ``deg(y)``; and
    ``c(X) < δ(X)`` for every proper nonempty vertex set ``X``.
    """
    g = c.host
    if not is_two_edge_connected(g):
        raise GraphError("excess feasibility needs a two-edge-connected graph")
    if sum(c.values) != 0:
        return False
    if any((c.values[y] - g.degree(y)) % 2 for y in range(g.n)):
        return False
    for X in proper_subsets(g, caps):
        delta = sum(1 for u, v in g.edges if (u in X) != (v in X))
        if sum(c.values[y] for y in X) >= delta:
            return False
    return True


def realizable_excesses(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> set[tuple]:
    """All ``d_in - d_out`` over strong orientations of all edges (exhaustive)."""
    caps.check("max_edges", g.m, "edges for 2^|E| orientation scan")
    out = set()
    for d in orientations_of(range(g.m)):
        # all edges are oriented and g is connected, so this is one strong component
        if is_strongly_connected(g, d):
            out.add(ExcessFunction.of(g, d).values)
    return out


# -- cut side -------------------------------------------------------------------

def cut_orientation_value(g: Multigraph, d: OrientedSubgraph, cell: CutCell) -> OrientationValue:
    y = cell.vertex_coords(d)
    nu = cell.to_edges(y)
    f = VertexFunction(g, (0,) + tuple(y))
    return OrientationValue(d, q(nu), dirichlet_form(f), f)


def covering_number_cut(g: Multigraph, caps: Caps = DEFAULT_CAPS, local_search_seed: int = 0,
                        cell: CutCell | None = None) -> CoveringReport:
    """Exact ``max q(ν^D)`` over acyclic orientations of the non-loop edges."""
    cell = cell or CutCell(g, caps)
    try:
        vals = [cut_orientation_value(g, d, cell) for d in cell.acyclic]
    except ResourceLimitError:
        best = local_search_cut(g, seed=local_search_seed, caps=caps)
        return CoveringReport("cut", best.q, [best.orientation], None, exhaustive=False,
                              checks={"dirichlet": best.q == best.dirichlet})
    value = max(v.q for v in vals)
    argmax = sorted((v.orientation for v in vals if v.q == value), key=OrientedSubgraph.key)
    checks = {
        "dirichlet": all(v.q == v.dirichlet for v in vals),
        "laplacian": all(
            [2 * x for x in laplacian_apply(v.potential).values]
            == [Fraction(a - b) for a, b in zip(in_degrees(g, v.orientation.arcs), out_degrees(g, v.orientation.arcs))]
            for v in vals),
    }
    try:
        oracle = max((cell.q_coords(y) for y in cell.polytope.vertices), default=Fraction(0))
    except ResourceLimitError:
        oracle = None
    bip = _bipartite(g)
    lf = len(g.loop_free_ids())
    closed = {
        "well_unbalanced": {"value": max(v.dirichlet for v in vals)},
        "bipartite_half_edges": {"value": Fraction(lf, 2), "applies": bip},
        "bipartite_quarter_edges": {"value": Fraction(lf, 4), "applies": bip},
    }
    return CoveringReport("cut", value, argmax, oracle, True, closed, checks)


def _bipartite(g: Multigraph) -> bool:
    if any(g.is_loop(e) for e in range(g.m)):
        return False
    color = [None] * g.n
    color[0] = 0
    stack = [0]
    while stack:
        x = stack.pop()
        for a in g.out_arcs(x):
            y = g.head(a)
            if color[y] is None:
                color[y] = 1 - color[x]
                stack.append(y)
            elif color[y] == color[x]:
                return False
    return True


def local_search_cut(g: Multigraph, seed: int = 0, rounds: int = 200, caps: Caps = DEFAULT_CAPS) -> OrientationValue:
    """Hill-climb ``q(ν^D)`` by turning sources into sinks and back (reversing a directed cut)."""
    cell = CutCell(g, caps)
    rng = random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    arcs = []
    for e in g.loop_free_ids():
        u, v = g.edges[e]
        arcs.append((e, 1 if pos[u] < pos[v] else -1))
    cur = cut_orientation_value(g, OrientedSubgraph(frozenset(arcs)), cell)
    for _ in range(rounds):
        improved = False
        verts = list(range(g.n))
        rng.shuffle(verts)
        for y in verts:
            d = cur.orientation
            touching = [a for a in d.arcs if y in (g.tail(a), g.head(a))]
            if not touching:
                continue
            if all(g.tail(a) == y for a in touching) or all(g.head(a) == y for a in touching):
                flipped = frozenset((e, -s) if (e, s) in touching else (e, s) for e, s in d.arcs)
                cand = cut_orientation_value(g, OrientedSubgraph(flipped), cell)
                if cand.q > cur.q:
                    cur, improved = cand, True
                    break
        if not improved:
            break
    return cur
