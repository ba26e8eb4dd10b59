"""Finite graded posets stored by their cover relation, and an isomorphism checker."""
from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Sequence

from .config import DEFAULT_CAPS, Caps
from .errors import LatflowError


@dataclass
class GradedPoset:
    """Elements ``0..n-1`` with canonical ``keys``, ``grades`` and cover pairs ``(lower, upper)``."""

    keys: list
    grades: list
    covers: list
    payloads: list | None = None
    name: str = ""
    class_of: list | None = None  # element -> class, set on quotients
    _index: dict = field(default=None, init=False, repr=False)
    _up: list = field(default=None, init=False, repr=False)
    _down: list = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if len(self.keys) != len(self.grades):
            raise LatflowError("keys and grades differ in length")
        self.covers = sorted(set((int(a), int(b)) for a, b in self.covers))
        self._index = {k: i for i, k in enumerate(self.keys)}
        if len(self._index) != len(self.keys):
            raise LatflowError("poset keys must be distinct")
        self._up = [[] for _ in self.keys]
        self._down = [[] for _ in self.keys]
        for a, b in self.covers:
            self._up[a].append(b)
            self._down[b].append(a)

    def __len__(self):
        return len(self.keys)

    def index(self, key: Hashable) -> int:
        return self._index[key]

    def up(self, i: int) -> list:
        return self._up[i]

    def down(self, i: int) -> list:
        return self._down[i]

    def payload(self, i: int):
        return None if self.payloads is None else self.payloads[i]

    def above(self, i: int) -> set:
        """All elements ``>= i`` (reachability along covers)."""
        seen = {i}
        stack = [i]
        while stack:
            x = stack.pop()
            for y in self._up[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def leq(self, i: int, j: int) -> bool:
        return j in self.above(i)

    def maxima(self) -> list:
        return [i for i in range(len(self)) if not self._up[i]]

    def minima(self) -> list:
        return [i for i in range(len(self)) if not self._down[i]]

    def rank_counts(self) -> tuple:
        """Number of elements of each grade, lowest grade first."""
        if not self.keys:
            return ()
        c = Counter(self.grades)
        lo, hi = min(c), max(c)
        return tuple(c.get(k, 0) for k in range(lo, hi + 1))

    def is_graded_by_covers(self) -> bool:
        return all(self.grades[b] == self.grades[a] + 1 for a, b in self.covers)

    def is_acyclic(self) -> bool:
        indeg = [len(d) for d in self._down]
        stack = [i for i, d in enumerate(indeg) if d == 0]
        seen = 0
        while stack:
            x = stack.pop()
            seen += 1
            for y in self._up[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    stack.append(y)
        return seen == len(self)

    def shuffled(self, seed: int = 0) -> "GradedPoset":
        """Same poset with its elements listed in a random order."""
        rng = random.Random(seed)
        perm = list(range(len(self)))
        rng.shuffle(perm)
        inv = {old: new for new, old in enumerate(perm)}
        return GradedPoset(
            keys=[self.keys[i] for i in perm],
            grades=[self.grades[i] for i in perm],
            covers=[(inv[a], inv[b]) for a, b in self.covers],
            payloads=None if self.payloads is None else [self.payloads[i] for i in perm],
            name=self.name,
        )

    def to_json(self, key_format: Callable[[Any], Any] = str) -> dict:
        return {
            "name": self.name,
            "size": len(self),
            "rank_counts": list(self.rank_counts()),
            "elements": [{"key": key_format(k), "grade": g} for k, g in zip(self.keys, self.grades)],
            "covers": [list(c) for c in self.covers],
        }

    def to_dot(self, key_format: Callable[[Any], str] = str) -> str:
        lines = [f"digraph {json.dumps(self.name or 'poset')} {{", "  rankdir=BT;", "  node [shape=box];"]
        by_grade = defaultdict(list)
        for i, g in enumerate(self.grades):
            by_grade[g].append(i)
        for g in sorted(by_grade):
            ids = " ".join(f"n{i};" for i in by_grade[g])
            lines.append(f"  {{ rank=same; {ids} }}")
        for i, k in enumerate(self.keys):
            label = key_format(k) or "∅"
            lines.append(f"  n{i} [label={json.dumps(label)}];")
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def poset_from_order(keys: Sequence, grades: Sequence[int], leq: Callable[[int, int], bool],
                     payloads=None, name="") -> GradedPoset:
    """Build a poset whose covers are the comparable pairs one grade apart."""
    by_grade = defaultdict(list)
    for i, g in enumerate(grades):
        by_grade[g].append(i)
    covers = []
    for g, lows in by_grade.items():
        for a in lows:
            for b in by_grade.get(g + 1, ()):
                if leq(a, b):
                    covers.append((a, b))
    return GradedPoset(list(keys), list(grades), covers, payloads, name)


def quotient_poset(p: GradedPoset, class_key: Callable[[int], Hashable], name="") -> tuple[GradedPoset, list]:
    """Identify elements with equal ``class_key``; covers are the images of covers.

    Returns the quotient and the element -> class index map. Classes are keyed by
    their smallest member key (members sorted by key).
    """
    groups = defaultdict(list)
    for i in range(len(p)):
        groups[class_key(i)].append(i)
    classes = sorted((sorted(m, key=lambda i: p.keys[i]) for m in groups.values()),
                     key=lambda m: (p.grades[m[0]], p.keys[m[0]]))
    cls_of = [0] * len(p)
    for c, members in enumerate(classes):
        grades = {p.grades[i] for i in members}
        if len(grades) != 1:
            raise LatflowError("a quotient class mixes grades")
        for i in members:
            cls_of[i] = c
    covers = {(cls_of[a], cls_of[b]) for a, b in p.covers if cls_of[a] != cls_of[b]}
    q = GradedPoset(
        keys=[p.keys[m[0]] for m in classes],
        grades=[p.grades[m[0]] for m in classes],
        covers=sorted(covers),
        payloads=[[p.keys[i] for i in m] for m in classes],
        name=name,
        class_of=cls_of,
    )
    return q, cls_of


def transitive_reduction_covers(n: int, less: Callable[[int, int], bool]) -> set:
    """Cover pairs computed from a strict order by brute force (test helper)."""
    rel = [[less(a, b) for b in range(n)] for a in range(n)]
    out = set()
    for a in range(n):
        for b in range(n):
            if rel[a][b] and not any(rel[a][c] and rel[c][b] for c in range(n)):
                out.add((a, b))
    return out


# -- isomorphism --------------------------------------------------------------

def _refine(colors: list, up: list, down: list) -> list:
    """Colour refinement on the Hasse diagram until the partition is stable."""
    ncol = len(set(colors))
    while True:
        get = colors.__getitem__
        sigs = [
            (colors[i], tuple(sorted(map(get, up[i]))), tuple(sorted(map(get, down[i]))))
            for i in range(len(colors))
        ]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [table[s] for s in sigs]
        if len(table) == ncol:
            return colors
        ncol = len(table)


def poset_isomorphic(p: GradedPoset, q: GradedPoset, caps: Caps = DEFAULT_CAPS,
                     use_grades: bool = True) -> tuple[bool, dict | None]:
    """Decide order-isomorphism; return ``(True, {p_index: q_index})`` or ``(False, None)``.

    Both posets are refined jointly (grade, then up/down cover colour multisets);
    remaining ambiguity is resolved by individualising one element at a time and
    backtracking. Any mapping returned has been checked against the covers.
    """
    caps.check("max_poset", max(len(p), len(q)), "poset size")
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return False, None
    n = len(p)
    if n == 0:
        return True, {}
    up = [list(p.up(i)) for i in range(n)] + [[j + n for j in q.up(i)] for i in range(n)]
    down = [list(p.down(i)) for i in range(n)] + [[j + n for j in q.down(i)] for i in range(n)]
    if use_grades:
        init = list(p.grades) + list(q.grades)
    else:
        init = [0] * (2 * n)
    base = sorted(set(init))
    colors = [base.index(c) for c in init]
    qcovers = set(q.covers)

    def balanced(cols):
        a = Counter(cols[:n])
        b = Counter(cols[n:])
        return a == b

    def search(cols):
        cols = _refine(cols, up, down)
        if not balanced(cols):
            return None
        cells = defaultdict(list)
        for i, c in enumerate(cols):
            cells[c].append(i)
        ambiguous = [c for c, members in cells.items() if len(members) > 2]
        if not ambiguous:
            mapping = {}
            for members in cells.values():
                a, b = members
                mapping[a] = b - n
            if all((mapping[a], mapping[b]) in qcovers for a, b in p.covers):
                return mapping
            return None
        target = min(ambiguous, key=lambda c: (len(cells[c]), c))
        members = cells[target]
        pa = next(i for i in members if i < n)
        fresh = max(cols) + 1
        for qb in (i for i in members if i >= n):
            trial = list(cols)
            trial[pa] = fresh
            trial[qb] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    mapping = search(colors)
    if mapping is None:
        return False, None
    return True, mapping


def check_isomorphism(p: GradedPoset, q: GradedPoset, mapping: dict) -> bool:
    """Verify that ``mapping`` is a bijection carrying covers onto covers."""
    if len(mapping) != len(p) or sorted(mapping.values()) != list(range(len(q))):
        return False
    mapped = {(mapping[a], mapping[b]) for a, b in p.covers}
    return mapped == set(q.covers)


def first_mismatch(p: GradedPoset, q: GradedPoset, mapping: dict) -> int | None:
    """First element of ``p`` where ``mapping`` fails to be an isomorphism onto ``q``.

    Returns None if the mapping is an isomorphism.
    """
    if len(p) != len(q):
        return 0 if len(p) else None
    seen = {}
    qcov = set(q.covers)
    for i in range(len(p)):
        j = mapping.get(i)
        if j is None or not 0 <= j < len(q) or j in seen or q.grades[j] != p.grades[i]:
            return i
        seen[j] = i
        if any((j, mapping.get(b)) not in qcov for b in p.up(i)):
            return i
        if len(p.up(i)) != len(q.up(j)):
            return i
    return None


def describe_mismatch(p: GradedPoset, q: GradedPoset, mapping: dict) -> dict | None:
    i = first_mismatch(p, q, mapping)
    if i is None:
        return None
    if i >= len(p):
        return {"index": i, "reason": "size"}
    j = mapping.get(i, -1)
    out = {"index": i, "key": str(p.keys[i]), "grade": p.grades[i], "image": j}
    if j is not None and 0 <= j < len(q):
        out["image_key"] = str(q.keys[j])
        out["image_grade"] = q.grades[j]
    return out
