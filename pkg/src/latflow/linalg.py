"""Exact linear algebra over the rationals.

Everything here works on lists of ``int``/``Fraction``. Rows are cleared of
denominators first so the elimination itself runs on Python integers.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import SingularMatrixError


def _integer_row(row) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Rank of a rational matrix given by its rows."""
    work = [r for r in (_primitive(_integer_row(r)) for r in rows) if any(r)]
    if not work:
        return 0
    ncols = len(work[0]) if ncols is None else ncols
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        p = work[r]
        a = p[col]
        for i in range(r + 1, len(work)):
            row = work[i]
            b = row[col]
            if b:
                work[i] = _primitive([x * a - y * b for x, y in zip(row, p)])
        r += 1
        if r == len(work):
            break
    return r


class IncrementalRank:
    """Row echelon basis that can be extended one vector at a time."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: list[tuple[int, list[int]]] = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row) -> list[int]:
        v = _primitive(_integer_row(row))
        for col, p in self.pivots:
            b = v[col]
            if b:
                a = p[col]
                v = _primitive([x * a - y * b for x, y in zip(v, p)])
        return v

    def add(self, row) -> bool:
        """Add ``row``; return True when it was independent of the rows so far."""
        v = self.reduce(row)
        for col, x in enumerate(v):
            if x:
                self.pivots.append((col, v))
                return True
        return False


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square system ``a x = b`` by fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve expects a square system")
    m = [_integer_row(list(row) + [rhs]) for row, rhs in zip(a, b)]
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            raise SingularMatrixError(f"singular matrix (column {k})")
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        pk = m[k]
        akk = pk[k]
        for i in range(k + 1, n):
            row = m[i]
            aik = row[k]
            for j in range(k + 1, n + 1):
                row[j] = (row[j] * akk - aik * pk[j]) // prev
            row[k] = 0
        prev = akk
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        s = Fraction(m[i][n])
        for j in range(i + 1, n):
            if m[i][j]:
                s -= m[i][j] * x[j]
        x[i] = s / m[i][i]
    return x


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    cols = [solve(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matvec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum((aij * xj for aij, xj in zip(row, x)), 0) for row in a]


def dot(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y)), 0)


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points`` (−1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([[x - y for x, y in zip(p, p0)] for p in points[1:]], ncols=len(p0))


def leading_minors(a: Sequence[Sequence]) -> list[Fraction]:
    """Determinants of the leading principal submatrices."""
    out = []
    for k in range(1, len(a) + 1):
        out.append(determinant([row[:k] for row in a[:k]]))
    return out


def determinant(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det
