"""Helpers shared by the flow-side and cut-side Voronoi cells.

Both cells live in integer coordinates: the lattice is ``Z^k`` and the metric
is a Gram matrix. The helpers here know nothing about graphs.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import product
from math import floor, lcm
from typing import Sequence

import numpy as np

from .config import DEFAULT_CAPS, Caps
from .errors import ResourceLimitError
from .linalg import IncrementalRank
from .polytope import RationalPolytope


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a nonempty point set (exact)."""
    if not points:
        return -1
    base = points[0]
    k = len(base)
    inc = IncrementalRank(k)
    for p in points[1:]:
        inc.add([a - b for a, b in zip(p, base)])
        if len(inc) == k:
            break
    return len(inc)


def covers_by_vertex_masks(masks: Sequence[int], grades: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``masks[i]`` a proper subset of ``masks[j]`` one grade up."""
    by_grade = defaultdict(list)
    for i, gr in enumerate(grades):
        by_grade[gr].append(i)
    covers = []
    for i, m in enumerate(masks):
        for j in by_grade.get(grades[i] + 1, ()):
            if masks[j] & m == m and masks[j] != m:
                covers.append((i, j))
    return covers


def translation_key(points: Sequence[Sequence], den: int = 1) -> tuple:
    """Invariant of a finite point set under translation by integer vectors.

    Points may be given pre-scaled by ``den`` (then translations are by
    multiples of ``den``). Two sets differ by a translation iff their keys
    agree: the shape relative to the lexicographically least point, plus that
    point's residue.
    """
    pts = sorted(tuple(p) for p in points)
    m = pts[0]
    shape = tuple(tuple(a - b for a, b in zip(p, m)) for p in pts)
    if den == 1:
        frac = tuple(x - floor(x) for x in m)
    else:
        frac = tuple(x % den for x in m)
    return (shape, frac)


def scale_points(points: Sequence[Sequence[Fraction]]) -> tuple[list[tuple], int]:
    """Integer copies of rational points under one common denominator."""
    den = 1
    for p in points:
        for x in p:
            den = lcm(den, x.denominator)
    return [tuple(int(x * den) for x in p) for p in points], den


def box_points(k: int, radius: int, caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """All integer vectors of ``[-radius, radius]^k`` as an ``(N, k)`` int64 array."""
    size = (2 * radius + 1) ** k
    if size > 50_000_000:
        raise ResourceLimitError("lattice box points", size, 50_000_000)
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = np.arange(-radius, radius + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axes] * k), indexing="ij"), axis=-1)
    return grid.reshape(-1, k)


def _scaled(p: RationalPolytope):
    """Integer halfspace matrix ``A``/``b`` and vertices scaled by a common ``den``."""
    rows = [list(r) for r in p._int_rows]
    A = np.array([r[:-1] for r in rows], dtype=np.int64).reshape(len(rows), p.dimension)
    b = np.array([r[-1] for r in rows], dtype=np.int64)
    den = 1
    for v in p.vertices:
        for x in v:
            den = lcm(den, x.denominator)
    V = np.array([[int(x * den) for x in v] for v in p.vertices], dtype=np.int64).reshape(
        len(p.vertices), p.dimension)
    return A, b, V, den


def intersection_scan(p: RationalPolytope, radius: int = 2, caps: Caps = DEFAULT_CAPS):
    """For every integer ``z`` in the box, which vertices of ``p`` lie in ``p + z``.

    Returns ``(Z, midpoint_ok, meets)``: the box points, a boolean array telling
    whether ``z / 2`` lies in ``p``, and a dict from row index of ``Z`` to the
    bitmask of vertices ``v`` of ``p`` with ``v - z`` in ``p``. Rows absent from
    ``meets`` have ``p`` and ``p + z`` disjoint (their intersection would be a
    face of ``p`` and so contain a vertex of ``p``).

    Candidate ``z`` for a vertex ``v`` are confined to ``v`` minus the bounding
    box of ``p``, which keeps high-dimensional boxes cheap.
    """
    k = p.dimension
    Z = box_points(k, radius, caps)
    A, b, V, den = _scaled(p)
    midpoint_ok = np.all(Z @ A.T <= 2 * b, axis=1)
    meets: dict[int, int] = {}
    if k == 0:
        meets[0] = 1
        return Z, midpoint_ok, meets
    lo = V.min(axis=0)
    hi = V.max(axis=0)
    AV = V @ A.T  # (N, H), scaled by den
    db = den * b
    stride = np.array([(2 * radius + 1) ** (k - 1 - j) for j in range(k)], dtype=np.int64)
    for vi in range(len(V)):
        v = V[vi]
        # v - z in [lo, hi]  <=>  z in [(v - hi)/den, (v - lo)/den]
        zlo = np.maximum(-((hi - v) // den), -radius)  # ceil((v - hi)/den)
        zhi = np.minimum((v - lo) // den, radius)
        if np.any(zlo > zhi):
            continue
        ranges = [range(int(a), int(c) + 1) for a, c in zip(zlo, zhi)]
        cand = np.array(list(product(*ranges)), dtype=np.int64).reshape(-1, k)
        ok = np.all(AV[vi][None, :] - den * (cand @ A.T) <= db[None, :], axis=1)
        for z in cand[ok]:
            row = int(((z + radius) * stride).sum())
            meets[row] = meets.get(row, 0) | (1 << vi)
    return Z, midpoint_ok, meets
