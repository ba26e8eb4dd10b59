"""Exact rational polytopes: double-description vertex enumeration and face lattices.

A polytope is ``{y : a_i . y <= b_i}`` in ``Q^d``. Vertex enumeration runs the
double description method on the homogenised cone
``{(y, t) : a_i . y - b_i t <= 0, -t <= 0}`` with integer rays, inserting one
halfspace at a time and combining adjacent rays (combinatorial adjacency test).
Faces are the nonempty intersections of the halfspaces' tight vertex sets and
are identified by their active halfspace sets.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from .config import DEFAULT_CAPS, Caps
from .errors import LatflowError
from .linalg import IncrementalRank, inverse, rank
from .posets import GradedPoset


def _int_row(coeffs: Sequence, rhs) -> list[int]:
    vals = [Fraction(x) for x in coeffs] + [Fraction(rhs)]
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    return [int(v * den) for v in vals]


def _normalize(ray: list[int]) -> tuple:
    g = 0
    for x in ray:
        g = gcd(g, x)
    if g > 1:
        ray = [x // g for x in ray]
    return tuple(ray)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


class UnboundedPolyhedronError(LatflowError):
    pass


def double_description(halfspaces: Sequence[tuple], dimension: int, caps: Caps = DEFAULT_CAPS) -> list[tuple]:
    """Vertices of the bounded polytope ``{y : a . y <= b}`` as tuples of Fractions."""
    caps.check("max_dimension", dimension, "polytope dimension")
    caps.check("max_halfspaces", len(halfspaces), "halfspace count")
    d = dimension
    if d == 0:
        if any(Fraction(b) < 0 for _, b in halfspaces):
            return []
        return [()]
    # cone rows: a . y - b t <= 0; the last row is -t <= 0
    rows = []
    for a, b in halfspaces:
        if len(a) != d:
            raise LatflowError("halfspace normal has the wrong dimension")
        r = _int_row(a, b)
        r[-1] = -r[-1]
        rows.append(r)
    rows.append([0] * d + [-1])
    m = len(rows)

    basis_rows = []
    inc = IncrementalRank(d + 1)
    for i in [m - 1] + list(range(m - 1)):
        if inc.add(rows[i]):
            basis_rows.append(i)
            if len(basis_rows) == d + 1:
                break
    if len(basis_rows) < d + 1:
        raise UnboundedPolyhedronError("halfspaces do not bound a full-dimensional pointed cone")

    inv = inverse([rows[i] for i in basis_rows])
    rays = []  # (ray, zero-set bitmask over row indices)
    for j in range(d + 1):
        col = [-inv[i][j] for i in range(d + 1)]
        den = 1
        for x in col:
            den = lcm(den, x.denominator)
        ray = _normalize([int(x * den) for x in col])
        zero = 0
        for k, i in enumerate(basis_rows):
            if k != j:
                zero |= 1 << i
        rays.append((ray, zero))

    done = set(basis_rows)
    # insert the rest in index order
    for i in range(m):
        if i in done:
            continue
        a = rows[i]
        pos, neg, zer = [], [], []
        for ray, z in rays:
            s = _dot(a, ray)
            if s > 0:
                pos.append((ray, z, s))
            elif s < 0:
                neg.append((ray, z, s))
            else:
                zer.append((ray, z | (1 << i)))
        if not pos:
            rays = [(r, z) for r, z, _ in neg] + zer
            done.add(i)
            continue
        new = [(r, z) for r, z, _ in neg] + zer
        all_z = [z for _, z in rays]
        need = d - 1
        for rp, zp, sp in pos:
            for rn, zn, sn in neg:
                common = zp & zn
                if common.bit_count() < need:
                    continue
                adjacent = True
                for z in all_z:
                    if z & common == common and z != zp and z != zn:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                ray = _normalize([sp * x - sn * y for x, y in zip(rn, rp)])
                new.append((ray, common | (1 << i)))
        rays = new
        done.add(i)

    verts = []
    for ray, _ in rays:
        t = ray[-1]
        if t == 0:
            raise UnboundedPolyhedronError("polyhedron is unbounded")
        verts.append(tuple(Fraction(x, t) for x in ray[:-1]))
    return sorted(set(verts))


class RationalPolytope:
    """H-representation with lazily computed vertices and face lattice.

    ``labels`` optionally attaches a payload to each halfspace (e.g. the
    lattice element that defines it).
    """

    def __init__(self, halfspaces: Sequence[tuple], dimension: int, labels: Sequence | None = None,
                 caps: Caps = DEFAULT_CAPS):
        self.halfspaces = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in halfspaces]
        self.dimension = dimension
        self.labels = list(labels) if labels is not None else None
        self.caps = caps
        self._int_rows = [_int_row(a, b) for a, b in self.halfspaces]

    def __repr__(self):
        return f"RationalPolytope(dim={self.dimension}, halfspaces={len(self.halfspaces)})"

    @cached_property
    def vertices(self) -> list[tuple]:
        return double_description(self.halfspaces, self.dimension, self.caps)

    def contains(self, y: Sequence) -> bool:
        return all(sum(x * c for x, c in zip(a, y)) <= b for a, b in self.halfspaces)

    def slack(self, i: int, y: Sequence) -> Fraction:
        a, b = self.halfspaces[i]
        return b - sum((x * c for x, c in zip(a, y)), Fraction(0))

    @cached_property
    def tight_masks(self) -> list[int]:
        """Per halfspace, the bitmask of vertices on its boundary."""
        verts = self.vertices
        # scale vertices to integers once
        den = 1
        for v in verts:
            for x in v:
                den = lcm(den, x.denominator)
        iv = [[int(x * den) for x in v] for v in verts]
        out = []
        for row in self._int_rows:
            a, b = row[:-1], row[-1] * den
            m = 0
            for k, v in enumerate(iv):
                s = _dot(a, v)
                if s > b:
                    raise LatflowError("vertex violates a halfspace")
                if s == b:
                    m |= 1 << k
            out.append(m)
        return out

    def vertex_active_sets(self) -> list[frozenset]:
        tm = self.tight_masks
        return [frozenset(i for i, m in enumerate(tm) if (m >> k) & 1) for k in range(len(self.vertices))]

    def active_set(self, vertex_mask: int) -> frozenset:
        return frozenset(i for i, m in enumerate(self.tight_masks) if m & vertex_mask == vertex_mask)

    def face_dimension(self, active: frozenset) -> int:
        normals = [self._int_rows[i][:-1] for i in sorted(active)]
        return self.dimension - rank(normals, ncols=self.dimension)

    @cached_property
    def face_lattice(self) -> GradedPoset:
        return face_lattice_bruteforce(self)


def face_lattice_bruteforce(p: RationalPolytope) -> GradedPoset:
    """Nonempty faces of ``p`` ordered by inclusion and graded by dimension.

    Keys are the sorted active halfspace index tuples; payloads are the vertex
    index tuples of each face.
    """
    nv = len(p.vertices)
    if nv == 0:
        raise LatflowError("empty polytope")
    full = (1 << nv) - 1
    tight = sorted(set(m for m in p.tight_masks if m))
    faces = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for f in frontier:
            for t in tight:
                h = f & t
                if h and h not in faces:
                    faces.add(h)
                    nxt.append(h)
        p.caps.check("max_poset", len(faces), "face lattice size")
        frontier = nxt
    faces = list(faces)
    active = {f: p.active_set(f) for f in faces}
    dims = {f: p.face_dimension(active[f]) for f in faces}
    # consistency: the face's vertices span an affine space of the same dimension
    order = sorted(faces, key=lambda f: (dims[f], tuple(sorted(active[f]))))
    index = {f: i for i, f in enumerate(order)}
    covers = set()
    for f in order:
        df = dims[f]
        for t in tight:
            h = f & t
            if h and h != f and dims[h] == df - 1:
                covers.add((index[h], index[f]))
    payloads = [tuple(k for k in range(nv) if (f >> k) & 1) for f in order]
    poset = GradedPoset(
        keys=[tuple(sorted(active[f])) for f in order],
        grades=[dims[f] for f in order],
        covers=sorted(covers),
        payloads=payloads,
        name="faces",
    )
    poset.vertex_masks = order
    return poset
