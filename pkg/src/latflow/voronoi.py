"""The Voronoi cell of the lattice of integer flows.

Coordinates are those of :func:`latflow.flows.flow_basis` (the values on the
non-tree edges), so the lattice is ``Z^g`` and the metric is the Gram matrix.
The cell is cut out by one halfspace ``2 <x, x^C> <= |C|`` per directed
circuit ``C``.

Two independent descriptions of its faces are built here: a combinatorial one
(one face per strongly connected oriented subgraph, spanned by the vertices of
the full strong orientations that extend it) and a geometric one (double
description on the halfspaces, see :mod:`latflow.polytope`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import isqrt

import numpy as np

from .cells import (affine_dimension, covers_by_vertex_masks, intersection_scan, scale_points,
                    translation_key)
from .config import DEFAULT_CAPS, Caps
from .errors import GraphError, LatflowError, VerificationError
from .flows import (EdgeVector, circuit_flow, cycle_coordinates, flow_basis, flow_from_coordinates,
                    gram_matrix, inner_product, is_flow, q)
from .graph import (Multigraph, OrientedSubgraph, enumerate_circuits, genus, is_strongly_connected,
                    non_bridge_edges, subgraph_genus)
from .linalg import IncrementalRank, inverse, matvec, solve
from .orientations import enumerate_sc, quotient_sc, sc_equivalent, strong_orientations
from .polytope import RationalPolytope
from .posets import GradedPoset, check_isomorphism, describe_mismatch, poset_isomorphic, quotient_poset


@dataclass(frozen=True)
class FaceRecord:
    """Payload of a combinatorial face: the oriented subgraph it comes from,
    its vertex set (bitmask over the cell's vertex list) and its active
    halfspaces (indices into the circuit list)."""

    orientation: OrientedSubgraph
    vertex_mask: int
    active: tuple
    codim: int


class FlowCell:
    """Cached data for the flow-side Voronoi cell of one graph."""

    def __init__(self, g: Multigraph, caps: Caps = DEFAULT_CAPS):
        self.g = g
        self.caps = caps
        self.dimension = genus(g)
        self.basis = flow_basis(g)
        self.gram = gram_matrix(self.basis)

    @cached_property
    def gram_inverse(self):
        return inverse(self.gram) if self.dimension else []

    @cached_property
    def circuits(self):
        return enumerate_circuits(self.g, caps=self.caps)

    @cached_property
    def xi(self) -> list[EdgeVector]:
        return [circuit_flow(self.g, c) for c in self.circuits]

    def coords(self, x: EdgeVector) -> tuple:
        return cycle_coordinates(x)

    def to_edges(self, y) -> EdgeVector:
        return flow_from_coordinates(self.g, y, self.basis)

    @cached_property
    def polytope(self) -> RationalPolytope:
        rows = []
        for c, x in zip(self.circuits, self.xi):
            normal = [2 * inner_product(b, x) for b in self.basis]
            rows.append((normal, len(c)))
        return RationalPolytope(rows, self.dimension, labels=list(self.circuits), caps=self.caps)

    @cached_property
    def strong(self) -> list[OrientedSubgraph]:
        return strong_orientations(self.g, self.caps)

    def _check_full(self, d: OrientedSubgraph):
        if d.edges != frozenset(non_bridge_edges(self.g)) or not is_strongly_connected(self.g, d):
            raise GraphError(f"{d} is not a strongly connected orientation of the non-bridge edges")

    def vertex_by_projection(self, d: OrientedSubgraph) -> tuple:
        """Half the orthogonal projection of the signed indicator of ``d`` onto the flow space."""
        chi = EdgeVector.from_arcs(self.g, d.arcs)
        rhs = [inner_product(b, chi) / 2 for b in self.basis]
        return tuple(matvec(self.gram_inverse, rhs)) if self.dimension else ()

    def vertex_by_circuits(self, d: OrientedSubgraph) -> tuple:
        """Solve ``2 <x, x^C> = |C|`` over independent directed circuits inside ``d``."""
        k = self.dimension
        if k == 0:
            return ()
        inc = IncrementalRank(k)
        rows, rhs = [], []
        mask = d.mask
        for c, x in zip(self.circuits, self.xi):
            if c.mask & mask != c.mask:
                continue
            row = [2 * inner_product(b, x) for b in self.basis]
            if inc.add(row):
                rows.append(row)
                rhs.append(Fraction(len(c)))
                if len(rows) == k:
                    break
        if len(rows) < k:
            raise VerificationError("directed circuits inside the orientation do not span the flow space",
                                    {"orientation": str(d)})
        return tuple(solve(rows, rhs))

    def vertex_coords(self, d: OrientedSubgraph) -> tuple:
        self._check_full(d)
        a = self.vertex_by_circuits(d)
        b = self.vertex_by_projection(d)
        if a != b:
            raise VerificationError("vertex solves disagree", {"orientation": str(d)})
        return a

    @cached_property
    def vertices(self) -> list[tuple]:
        """Vertex coordinates, one per entry of :attr:`strong`."""
        return [self.vertex_coords(d) for d in self.strong]

    @cached_property
    def scaled_vertices(self) -> tuple[list[tuple], int]:
        return scale_points(self.vertices)

    @cached_property
    def tight(self) -> list[int]:
        """Per vertex, the bitmask of circuits whose halfspace is tight there."""
        out = []
        ivs, den = self.scaled_vertices
        rows = [(r[:-1], r[-1] * den) for r in self.polytope._int_rows]
        for y in ivs:
            m = 0
            for i, (a, b) in enumerate(rows):
                s = sum(ai * yi for ai, yi in zip(a, y))
                if s > b:
                    raise VerificationError("vertex violates a circuit halfspace", {"circuit": i})
                if s == b:
                    m |= 1 << i
            out.append(m)
        return out

    @cached_property
    def covering_radius_sq(self) -> Fraction:
        return max((self.q_coords(y) for y in self.vertices), default=Fraction(0))

    def q_coords(self, y) -> Fraction:
        k = self.dimension
        return sum((self.gram[i][j] * y[i] * y[j] for i in range(k) for j in range(k)), Fraction(0))


# -- public operations ----------------------------------------------------------

def xi1(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> list[EdgeVector]:
    """Circuit flows of all directed circuits."""
    return FlowCell(g, caps).xi


def voronoi_halfspaces(g: Multigraph, caps: Caps = DEFAULT_CAPS) -> RationalPolytope:
    return FlowCell(g, caps).polytope


def vertex_of_orientation(g: Multigraph, d: OrientedSubgraph, caps: Caps = DEFAULT_CAPS,
                          cell: FlowCell | None = None) -> EdgeVector:
    """The cell vertex of a strong orientation of ``g`` minus its bridges, in edge coordinates."""
    cell = cell or FlowCell(g, caps)
    return cell.to_edges(cell.vertex_coords(d))


def face_poset_combinatorial(g: Multigraph, caps: Caps = DEFAULT_CAPS,
                             cell: FlowCell | None = None, sc: GradedPoset | None = None) -> GradedPoset:
    """One face per strongly connected oriented subgraph ``D``: the hull of the
    vertices of full strong orientations extending ``D``.

    Checks, per face: the codimension equals the genus of ``D``; the circuits
    tight on every vertex of the face are exactly the circuits inside ``D``;
    their supports cover ``D``.
    """
    cell = cell or FlowCell(g, caps)
    sc = sc or enumerate_sc(g, caps)
    k = cell.dimension
    strong_masks = [d.mask for d in cell.strong]
    circ_masks = [c.mask for c in cell.circuits]
    tight = cell.tight
    ivs, _ = cell.scaled_vertices
    all_circ = (1 << len(circ_masks)) - 1
    records, grades = [], []
    for d in sc.payloads:
        dm = d.mask
        vmask = 0
        common = all_circ
        pts = []
        for i, sm in enumerate(strong_masks):
            if sm & dm == dm:
                vmask |= 1 << i
                common &= tight[i]
                pts.append(ivs[i])
        if not pts:
            raise VerificationError("oriented subgraph has no strong extension", {"D": str(d)})
        dim = affine_dimension(pts)
        codim = k - dim
        if codim != subgraph_genus(g, d.edges):
            raise VerificationError("face codimension differs from the genus of its subgraph",
                                    {"D": str(d), "codim": codim})
        inside = 0
        for j, cm in enumerate(circ_masks):
            if cm & dm == cm:
                inside |= 1 << j
        if common != inside:
            raise VerificationError("tight circuits of a face are not the circuits inside it", {"D": str(d)})
        union = 0
        for j, cm in enumerate(circ_masks):
            if (inside >> j) & 1:
                union |= cm
        if union != dm:
            raise VerificationError("active circuits do not cover the subgraph", {"D": str(d)})
        active = tuple(j for j in range(len(circ_masks)) if (inside >> j) & 1)
        records.append(FaceRecord(d, vmask, active, codim))
        grades.append(dim)
    masks = [r.vertex_mask for r in records]
    if len(set(masks)) != len(masks):
        raise VerificationError("two oriented subgraphs give the same face")
    return GradedPoset(list(sc.keys), grades, covers_by_vertex_masks(masks, grades),
                       payloads=records, name="FP")


def face_poset_geometric(g: Multigraph, caps: Caps = DEFAULT_CAPS, cell: FlowCell | None = None) -> GradedPoset:
    """Face lattice of the halfspace description, by double description."""
    cell = cell or FlowCell(g, caps)
    return cell.polytope.face_lattice


def phi_of_active(cell: FlowCell, active: tuple) -> int:
    """Arc mask of the union of supports of the given circuits."""
    m = 0
    for i in active:
        m |= cell.circuits[i].mask
    return m


def closest_lattice_point(x: EdgeVector, caps: Caps = DEFAULT_CAPS,
                          cell: FlowCell | None = None) -> list[EdgeVector]:
    """All integer flows nearest to the flow ``x`` under ``q``.

    Any nearest point ``z`` has ``q(x - z)`` at most the squared covering
    radius ``R``, hence ``|y_j - z_j|^2 <= R * (G^-1)_jj`` in coordinates; the
    box this gives is searched exhaustively.
    """
    if not is_flow(x):
        raise LatflowError("closest_lattice_point expects a flow")
    g = x.host
    cell = cell or FlowCell(g, caps)
    k = cell.dimension
    if k == 0:
        return [EdgeVector.zero(g)]
    y = cell.coords(x)
    R = cell.covering_radius_sq
    ranges = []
    for j in range(k):
        t = R * cell.gram_inverse[j][j]
        s = isqrt(-(-t.numerator // t.denominator)) + 1
        c = int(y[j])
        ranges.append(range(c - s - 1, c + s + 2))
    best, arg = None, []
    for z in product(*ranges):
        diff = [a - b for a, b in zip(y, z)]
        val = cell.q_coords(diff)
        if best is None or val < best:
            best, arg = val, [z]
        elif val == best:
            arg.append(z)
    if best > R:
        raise VerificationError("nearest lattice point is farther than the covering radius")
    return [cell.to_edges(z) for z in sorted(arg)]


def delaunay_adjacency_check(g: Multigraph, caps: Caps = DEFAULT_CAPS, radius: int = 2,
                             cell: FlowCell | None = None, faces: GradedPoset | None = None) -> dict:
    """Scan every lattice point ``z`` in ``[-radius, radius]^g`` and check:

    * the cell and its translate by ``z`` meet iff ``z`` is Eulerian, iff the
      midpoint ``z/2`` lies in the cell;
    * when they meet, the common face has codimension equal to the genus of the
      support of ``z``;
    * codimension one happens exactly for circuit flows.
    """
    cell = cell or FlowCell(g, caps)
    faces = faces or face_poset_geometric(g, caps, cell)
    k = cell.dimension
    dim_of_mask = {m: faces.grades[i] for i, m in enumerate(faces.vertex_masks)}
    Z, midpoint_ok, meets = intersection_scan(cell.polytope, radius, caps)
    B = np.array([[int(b.values[e]) for b in cell.basis] for e in range(g.m)], dtype=np.int64).reshape(g.m, k)
    lam = Z @ B.T
    eulerian = np.all(np.abs(lam) <= 1, axis=1)
    circuit_set = {tuple(int(v) for v in x.values) for x in cell.xi}
    failures = []
    counts = {"points": 0, "eulerian": 0, "meeting": 0, "facets": 0}
    for r in range(len(Z)):
        z = tuple(int(v) for v in Z[r])
        if not any(z):
            continue
        counts["points"] += 1
        eu = bool(eulerian[r])
        meet = r in meets
        counts["eulerian"] += eu
        counts["meeting"] += meet
        if not (eu == meet == bool(midpoint_ok[r])):
            failures.append({"z": z, "eulerian": eu, "meets": meet, "midpoint": bool(midpoint_ok[r])})
            continue
        if not meet:
            continue
        dim = dim_of_mask.get(meets[r])
        if dim is None:
            failures.append({"z": z, "reason": "intersection is not a face"})
            continue
        codim = k - dim
        sup = [e for e in range(g.m) if lam[r][e]]
        if codim != subgraph_genus(g, sup):
            failures.append({"z": z, "codim": codim, "genus": subgraph_genus(g, sup)})
        is_circuit = tuple(int(v) for v in lam[r]) in circuit_set
        counts["facets"] += codim == 1
        if (codim == 1) != is_circuit:
            failures.append({"z": z, "codim": codim, "circuit": is_circuit})
    return {"radius": radius, "counts": counts, "ok": not failures, "failures": failures[:10]}


def quotient_face_poset(g: Multigraph, caps: Caps = DEFAULT_CAPS, cell: FlowCell | None = None,
                        faces: GradedPoset | None = None) -> GradedPoset:
    """Identify faces whose vertex sets differ by an integer flow.

    Every class is checked against the degree rule: two oriented subgraphs are
    identified iff they share an edge set and reversing their disagreement
    gives an Eulerian orientation.
    """
    cell = cell or FlowCell(g, caps)
    faces = faces or face_poset_combinatorial(g, caps, cell)

    ivs, den = cell.scaled_vertices

    def key(i):
        m = faces.payloads[i].vertex_mask
        pts = [ivs[j] for j in range(len(ivs)) if (m >> j) & 1]
        return (faces.grades[i], translation_key(pts, den))

    qp, cls_of = quotient_poset(faces, key, name="FP/~")
    first = {}
    for i, c in enumerate(cls_of):
        first.setdefault(c, i)
    for i, c in enumerate(cls_of):
        r = first[c]
        if not sc_equivalent(g, faces.payloads[r].orientation, faces.payloads[i].orientation):
            raise VerificationError("translated faces are not related by an Eulerian reversal",
                                    {"F1": str(faces.payloads[r].orientation),
                                     "F2": str(faces.payloads[i].orientation)})
    # conversely, equivalent subgraphs must land in the same class
    seen = {}
    for i, rec in enumerate(faces.payloads):
        d = rec.orientation
        from_degrees = (tuple(sorted(d.edges)), _out_deg(g, d))
        c = seen.setdefault(from_degrees, cls_of[i])
        if c != cls_of[i]:
            raise VerificationError("equivalent subgraphs give faces that are not translates", {"D": str(d)})
    return qp


def _out_deg(g, d):
    deg = [0] * g.n
    for a in d.arcs:
        deg[g.tail(a)] += 1
    return tuple(deg)


def verify_flow_side(g: Multigraph, caps: Caps = DEFAULT_CAPS, radius: int | None = 2,
                    witness: bool = False, cell: FlowCell | None = None) -> dict:
    """Run every flow-side check on one graph and return a JSON-ready report."""
    cell = cell or FlowCell(g, caps)
    sc = enumerate_sc(g, caps)
    comb = face_poset_combinatorial(g, caps, cell, sc)
    geo = face_poset_geometric(g, caps, cell)
    report = {"side": "flow", "dimension": cell.dimension, "halfspaces": len(cell.circuits)}
    report["f_vector"] = list(geo.rank_counts())

    # vertices: double description versus strong orientations
    dd = set(cell.polytope.vertices)
    report["vertices_match"] = dd == set(cell.vertices) and len(dd) == len(cell.vertices)

    ok, mapping = poset_isomorphic(geo, sc, caps)
    report["isomorphic_to_sc"] = ok
    sc_by_mask = {d.mask: i for i, d in enumerate(sc.payloads)}
    phi = {}
    for i, key in enumerate(geo.keys):
        phi[i] = sc_by_mask.get(phi_of_active(cell, key), -1)
    report["phi_is_isomorphism"] = -1 not in phi.values() and check_isomorphism(geo, sc, phi)
    report["first_mismatch"] = describe_mismatch(geo, sc, phi)
    if witness:
        report["witness"] = [{"face": list(geo.keys[i]), "dimension": geo.grades[i],
                              "orientation": str(sc.payloads[j]) if j >= 0 else None}
                             for i, j in sorted(phi.items())]
    report["combinatorial_is_sc"] = check_isomorphism(comb, sc, {i: i for i in range(len(sc))})
    # geometric faces and combinatorial faces carry the same vertex sets
    vpos = {v: i for i, v in enumerate(cell.vertices)}
    remap = [vpos.get(v) for v in cell.polytope.vertices]
    geo_sets = set()
    if None not in remap:
        for m in geo.vertex_masks:
            geo_sets.add(sum(1 << remap[j] for j in range(len(remap)) if (m >> j) & 1))
    report["face_sets_match"] = geo_sets == {r.vertex_mask for r in comb.payloads}

    # opposite arcs never occur inside one face's active circuits
    consistent = True
    for rec in comb.payloads:
        arcs = set()
        for j in rec.active:
            arcs |= set(cell.circuits[j].arcs)
        if any((e, -s) in arcs for e, s in arcs):
            consistent = False
    report["consistency"] = consistent

    qf = quotient_face_poset(g, caps, cell, comb)
    qs = quotient_sc(g, sc)
    report["quotient_counts"] = list(qf.rank_counts())
    report["quotient_isomorphic"] = poset_isomorphic(qf, qs, caps)[0]

    if radius is not None:
        report["delaunay"] = delaunay_adjacency_check(g, caps, radius, cell, geo)
    report["ok"] = all(report[k] for k in ("vertices_match", "isomorphic_to_sc", "phi_is_isomorphism",
                                           "combinatorial_is_sc", "face_sets_match", "consistency",
                                           "quotient_isomorphic")) and \
        (radius is None or report["delaunay"]["ok"])
    return report
