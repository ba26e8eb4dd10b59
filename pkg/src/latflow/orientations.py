"""The orientation posets SC and CAC, their quotients, and orientation enumerators.

SC: strongly connected orientations of subgraphs, ordered by reverse
inclusion of arc sets and graded by ``genus(G) - genus(H)``.

CAC: coherent acyclic orientations of cut subgraphs (orientations induced by
ordered vertex partitions), ordered by reverse inclusion and graded by
``(n - 1) - rank(bond elements supported inside the orientation)``.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import product
from math import comb

from .config import DEFAULT_CAPS, Caps
from .cuts import bond_subsets, cut_arcs, cut_element, proper_subsets
from .errors import ResourceLimitError, VerificationError
from .graph import (Multigraph, OrientedSubgraph, _UnionFind, arcs_mask, genus, is_acyclic,
                    is_eulerian_orientation, is_strongly_connected, non_bridge_edges,
                    orientations_of, out_degrees, subgraph_genus)
from .linalg import rank
from .posets import GradedPoset, quotient_poset


def _covers_by_submask(masks: list[int], grades: list[int]) -> list[tuple[int, int]]:
    """Cover pairs (lower, upper) where upper's arcs are a subset of lower's, one grade up."""
    index = {m: i for i, m in enumerate(masks)}
    covers = []
    for i, m in enumerate(masks):
        if not m:
            continue
        want = grades[i] + 1
        sub = (m - 1) & m
        while True:
            j = index.get(sub)
            if j is not None and grades[j] == want:
                covers.append((i, j))
            if not sub:
                break
            sub = (sub - 1) & m
    return covers


def _sorted_elements(elems: list[OrientedSubgraph], grades: list[int]):
    order = sorted(range(len(elems)), key=lambda i: (grades[i], elems[i].key()))
    return [elems[i] for i in order], [grades[i] for i in order]


def enumerate_sc(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> GradedPoset:
    """All strongly connected orientations of subgraphs of ``g``.

    Bridges lie on no cycle, so only the non-bridge edges are scanned.
    """
    caps.check("max_edges", g.m, "edges for 3^|E| orientation scan")
    ge = genus(g)
    edges = non_bridge_edges(g)
    elems, grades = [], []
    for states in product((0, 1, -1), repeat=len(edges)):
        arcs = [(e, s) for e, s in zip(edges, states) if s]
        if is_strongly_connected(g, arcs):
            d = OrientedSubgraph(frozenset(arcs))
            elems.append(d)
            grades.append(ge - subgraph_genus(g, d.edges))
    caps.check("max_poset", len(elems), "SC poset size")
    elems, grades = _sorted_elements(elems, grades)
    masks = [d.mask for d in elems]
    return GradedPoset([d.key() for d in elems], grades, _covers_by_submask(masks, grades),
                       payloads=elems, name="SC")


def _fubini(n: int) -> int:
    @lru_cache(None)
    def a(k):
        if k == 0:
            return 1
        return sum(comb(k, i) * a(k - i) for i in range(1, k + 1))
    return a(n)


def ordered_partition_orientations(g: Multigraph, caps: Caps = DEFAULT_CAPS):
    """Yield ``(blocks, orientation)`` for every ordered partition of the vertices."""
    caps.check("max_vertices", g.n, "vertices for ordered-partition scan")
    if _fubini(g.n) > 50 * caps.max_poset:
        raise ResourceLimitError("ordered partitions", _fubini(g.n), 50 * caps.max_poset)
    full = (1 << g.n) - 1
    loop_free = g.loop_free_ids()

    def rec(remaining, level, levels, blocks):
        if not remaining:
            arcs = []
            for e in loop_free:
                u, v = g.edges[e]
                if levels[u] < levels[v]:
                    arcs.append((e, 1))
                elif levels[u] > levels[v]:
                    arcs.append((e, -1))
            yield tuple(blocks), OrientedSubgraph(frozenset(arcs))
            return
        sub = remaining
        while sub:
            block = [v for v in range(g.n) if (sub >> v) & 1]
            for v in block:
                levels[v] = level
            yield from rec(remaining & ~sub, level + 1, levels, blocks + [tuple(block)])
            sub = (sub - 1) & remaining

    yield from rec(full, 0, [0] * g.n, [])


class _BondIndex:
    """Bond elements of ``g`` with their support masks, for rank queries."""

    def __init__(self, g: Multigraph, caps: Caps):
        self.g = g
        self.subsets = bond_subsets(g, caps)
        self.masks = [arcs_mask(cut_arcs(g, s)) for s in self.subsets]
        self.vectors = [[int(x) for x in cut_element(g, s).values] for s in self.subsets]

    def inside(self, mask: int) -> list[int]:
        return [i for i, m in enumerate(self.masks) if m & mask == m]

    def rank_inside(self, mask: int) -> int:
        return rank([self.vectors[i] for i in self.inside(mask)], ncols=self.g.m)


def cac_grade(g: Multigraph, d: OrientedSubgraph, caps: Caps = DEFAULT_CAPS, _bonds=None) -> int:
    bonds = _bonds or _BondIndex(g, caps)
    return (g.n - 1) - bonds.rank_inside(d.mask)


def enumerate_cac(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> GradedPoset:
    """Coherent acyclic orientations of cut subgraphs; loops never appear."""
    seen = {}
    for blocks, d in ordered_partition_orientations(g, caps):
        seen.setdefault(d.mask, (d, blocks))
    caps.check("max_poset", len(seen), "CAC poset size")
    bonds = _BondIndex(g, caps)
    elems = [d for d, _ in seen.values()]
    grades = [(g.n - 1) - bonds.rank_inside(d.mask) for d in elems]
    elems, grades = _sorted_elements(elems, grades)
    masks = [d.mask for d in elems]
    by_grade = defaultdict(list)
    for i, gr in enumerate(grades):
        by_grade[gr].append(i)
    covers = []
    for i, m in enumerate(masks):
        for j in by_grade.get(grades[i] + 1, ()):
            if masks[j] & m == masks[j]:
                covers.append((i, j))
    return GradedPoset([d.key() for d in elems], grades, covers, payloads=elems, name="CAC")


# -- equivalences and quotients -----------------------------------------------

def _disagreement(d1: OrientedSubgraph, d2: OrientedSubgraph) -> frozenset:
    return frozenset(a for a in d1.arcs if (a[0], -a[1]) in d2.arcs)


def sc_equivalent(g: Multigraph, d1: OrientedSubgraph, d2: OrientedSubgraph) -> bool:
    """Same edge set and equal out-degrees; cross-checked against the reversal form."""
    if d1.edges != d2.edges:
        return False
    by_degree = out_degrees(g, d1.arcs) == out_degrees(g, d2.arcs)
    by_reversal = is_eulerian_orientation(g, _disagreement(d1, d2))
    if by_degree != by_reversal:
        raise VerificationError("out-degree and Eulerian-reversal characterisations disagree",
                                {"d1": str(d1), "d2": str(d2)})
    return by_degree


def quotient_sc(g: Multigraph, p: GradedPoset) -> GradedPoset:
    def key(i):
        d = p.payloads[i]
        return (tuple(sorted(d.edges)), out_degrees(g, d.arcs))

    qp, cls_of = quotient_poset(p, key, name="SC/~")
    reps = {}
    for i, c in enumerate(cls_of):
        r = reps.setdefault(c, i)
        if not sc_equivalent(g, p.payloads[r], p.payloads[i]):
            raise VerificationError("class members are not equivalent")
    return qp


def oriented_cut_subset(g: Multigraph, arcs: frozenset, caps: Caps = DEFAULT_CAPS):
    """A vertex set ``C`` whose outgoing cut arcs are exactly ``arcs``, or None."""
    if not arcs:
        return frozenset()
    for s in proper_subsets(g, caps):
        if cut_arcs(g, s) == arcs:
            return s
    return None


def cac_equivalent(g: Multigraph, d1: OrientedSubgraph, d2: OrientedSubgraph,
                   caps: Caps = DEFAULT_CAPS) -> bool:
    """Same edge set and the disagreement arcs form an oriented cut of ``g``."""
    if d1.edges != d2.edges:
        return False
    return oriented_cut_subset(g, _disagreement(d1, d2), caps) is not None


def _cac_classes(g: Multigraph, p: GradedPoset, caps: Caps) -> _UnionFind:
    groups = defaultdict(list)
    for i, d in enumerate(p.payloads):
        groups[d.edges].append(i)
    uf = _UnionFind(len(p))
    for members in groups.values():
        for a_pos, a in enumerate(members):
            for b in members[a_pos + 1:]:
                if cac_equivalent(g, p.payloads[a], p.payloads[b], caps):
                    uf.union(a, b)
    return uf


def cac_intransitive_pairs(g: Multigraph, p: GradedPoset, caps: Caps = DEFAULT_CAPS) -> list[tuple]:
    """Pairs in one generated class whose disagreement is not a single oriented cut."""
    uf = _cac_classes(g, p, caps)
    classes = defaultdict(list)
    for i in range(len(p)):
        classes[uf.find(i)].append(i)
    out = []
    for members in classes.values():
        for a in members:
            for b in members:
                if a < b and not cac_equivalent(g, p.payloads[a], p.payloads[b], caps):
                    out.append((p.payloads[a], p.payloads[b]))
    return out


def quotient_cac(g: Multigraph, p: GradedPoset, caps: Caps = DEFAULT_CAPS) -> GradedPoset:
    """Quotient by the equivalence generated by single oriented-cut reversals.

    The one-step relation is not transitive in general (two disjoint directed
    cuts reversed one after the other), so classes are its transitive closure.
    """
    uf = _cac_classes(g, p, caps)
    qp, _ = quotient_poset(p, lambda i: uf.find(i), name="CAC/~")
    return qp


# -- full orientations --------------------------------------------------------

def strong_orientations(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> list[OrientedSubgraph]:
    """Strongly connected orientations of ``g`` minus its bridges, sorted by key."""
    edges = non_bridge_edges(g)
    caps.check("max_edges", len(edges), "edges for 2^|E| orientation scan")
    out = [d for d in orientations_of(edges) if is_strongly_connected(g, d)]
    return sorted(out, key=OrientedSubgraph.key)


def acyclic_orientations(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> list[OrientedSubgraph]:
    """Acyclic orientations of all non-loop edges, sorted by key."""
    edges = g.loop_free_ids()
    caps.check("max_edges", len(edges), "edges for 2^|E| orientation scan")
    out = [d for d in orientations_of(edges) if is_acyclic(g, d)]
    return sorted(out, key=OrientedSubgraph.key)
