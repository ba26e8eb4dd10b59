"""Reading graphs from the text and JSON formats.

Text: first line ``n m``, then ``m`` lines ``u v`` with 0-based vertices; the
edge id is the line order; ``#`` starts a comment. JSON: an object with ``n``
and ``edges`` (a list of pairs), optionally ``vertices`` labels.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphSyntaxError
from .graph import Multigraph


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphSyntaxError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph_text(text: str) -> Multigraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphSyntaxError("empty graph file")
    lineno, head = rows[0]
    if len(head) != 2:
        raise GraphSyntaxError("header must be 'n m'", lineno)
    n, m = _ints(head, lineno)
    if n <= 0 or m < 0:
        raise GraphSyntaxError("need n >= 1 and m >= 0", lineno)
    body = rows[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise GraphSyntaxError(f"header promises {m} edges, found {len(body)}", last)
    edges = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise GraphSyntaxError("edge line must be 'u v'", lineno)
        u, v = _ints(toks, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphSyntaxError(f"vertex out of range 0..{n - 1}", lineno)
        edges.append((u, v))
    return Multigraph.from_edges(n, edges)


def parse_graph_json(data: dict) -> Multigraph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphSyntaxError(f"bad JSON graph: {exc}") from None
    if "m" in data and int(data["m"]) != len(edges):
        raise GraphSyntaxError("field m disagrees with the edge list")
    labels = data.get("vertices")
    if labels is not None:
        if len(labels) != n:
            raise GraphSyntaxError("vertices list has the wrong length")
        return Multigraph(tuple(labels), tuple(edges))
    return Multigraph.from_edges(n, edges)


def parse_graph_file(path) -> Multigraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphSyntaxError(exc.msg, exc.lineno) from None
        return parse_graph_json(data)
    return parse_graph_text(text)


def format_graph_text(g: Multigraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
