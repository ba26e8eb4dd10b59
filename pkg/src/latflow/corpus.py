"""Test graphs: a fixed suite and a seeded random sampler."""
from __future__ import annotations

import random

from .config import Caps
from .errors import DisconnectedGraphError
from .graph import Multigraph

# genus of a multigraph with |E| <= 8 can reach 8 (eight loops on one vertex)
CORPUS_CAPS = Caps(max_dimension=8)


def fixed_suite() -> dict[str, Multigraph]:
    e = Multigraph.from_edges
    return {
        "loop": e(1, [(0, 0)]),
        "C3": e(3, [(0, 1), (1, 2), (2, 0)]),
        "C4": e(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        "theta": e(2, [(0, 1), (0, 1), (0, 1)]),
        "K4": e(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "K23": e(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
        "theta_pendant": e(3, [(0, 1), (0, 1), (0, 1), (1, 2)]),
        "bowtie": e(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]),
    }


def named_graph(name: str) -> Multigraph:
    """Fixed-suite graphs plus a few families: ``C<n>``, ``K<n>``, ``P<n>`` (path), ``K2``."""
    suite = fixed_suite()
    if name in suite:
        return suite[name]
    kind, _, num = name[0], None, name[1:]
    if not num.isdigit():
        raise KeyError(name)
    n = int(num)
    if kind == "C" and n >= 1:
        return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)]) if n > 1 else suite["loop"]
    if kind == "K":
        return Multigraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])
    if kind == "P":
        return Multigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    raise KeyError(name)


def random_multigraph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8,
                      p_loop: float = 0.1, p_parallel: float = 0.2) -> Multigraph:
    """Connected multigraph by rejection sampling.

    Each edge is a loop with probability ``p_loop``, otherwise a copy of an
    earlier edge with probability ``p_parallel``, otherwise a uniform pair of
    distinct vertices.
    """
    while True:
        n = rng.randint(1, min(max_vertices, max_edges + 1))
        m = rng.randint(max(n - 1, 1), max_edges)
        edges = []
        for _ in range(m):
            r = rng.random()
            if n == 1 or r < p_loop:
                v = rng.randrange(n)
                edges.append((v, v))
            elif edges and r < p_loop + p_parallel:
                edges.append(rng.choice(edges))
            else:
                u, v = rng.sample(range(n), 2)
                edges.append((u, v))
        try:
            return Multigraph.from_edges(n, edges)
        except DisconnectedGraphError:
            continue


def random_corpus(seed: int = 0, count: int = 100, **kw) -> dict[str, Multigraph]:
    rng = random.Random(seed)
    return {f"random-{seed}-{i:03d}": random_multigraph(rng, **kw) for i in range(count)}
