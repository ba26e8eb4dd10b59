"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails (the report then
carries a counterexample dump), 2 on bad input or an exceeded cap.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .config import Caps
from .corpus import CORPUS_CAPS, fixed_suite, named_graph, random_corpus
from .covering import covering_number_cut, covering_number_flow
from .cut_voronoi import (CutCell, cut_face_poset_combinatorial, cut_face_poset_geometric,
                          quotient_cut_face_poset, verify_cut_side)
from .errors import GraphError, LatflowError, ResourceLimitError, VerificationError
from .graph import Multigraph, format_arcs
from .graphio import parse_graph_file
from .orientations import enumerate_cac, enumerate_sc, quotient_cac, quotient_sc
from .posets import GradedPoset, poset_isomorphic
from .voronoi import (FlowCell, face_poset_combinatorial, face_poset_geometric, quotient_face_poset,
                      verify_flow_side)

COMMANDS = ("sc-poset", "cac-poset", "voronoi-flow", "voronoi-cut", "verify", "covering-flow",
            "covering-cut", "quotients", "corpus")
FORMATS = ("json", "dot", "text")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(LatflowError):
    pass


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_default, indent=1, ensure_ascii=False) + "\n"


def _arcs(key) -> str:
    return format_arcs(key) or "{}"


def _fracs(xs) -> list:
    return [str(Fraction(x)) for x in xs]


def load_graph(source: str) -> Multigraph:
    """A file path, or ``@name`` for a built-in graph (``@theta``, ``@C5``, ``@K4`` ...)."""
    if source.startswith("@"):
        try:
            return named_graph(source[1:])
        except KeyError:
            raise UsageError(f"unknown built-in graph {source!r}") from None
    if not Path(source).is_file():
        raise UsageError(f"no such file: {source}")
    return parse_graph_file(source)


# -- per-graph commands ----------------------------------------------------------

def _poset_result(p: GradedPoset) -> tuple[dict, str]:
    return {"poset": p.to_json(_arcs)}, p.to_dot(_arcs)


def cmd_sc_poset(g, caps, args):
    return _poset_result(enumerate_sc(g, caps)) + (True,)


def cmd_cac_poset(g, caps, args):
    return _poset_result(enumerate_cac(g, caps)) + (True,)


def _halfspace_json(poly, labels):
    return [{"label": lab, "normal": _fracs(a), "rhs": str(b)} for (a, b), lab in zip(poly.halfspaces, labels)]


def cmd_voronoi_flow(g, caps, args):
    cell = FlowCell(g, caps)
    geo = face_poset_geometric(g, caps, cell)
    labels = [_arcs(c.arcs) for c in cell.circuits]
    fmt = lambda key: " | ".join(labels[j] for j in key)  # noqa: E731
    res = {
        "dimension": cell.dimension,
        "basis": [b.to_json() for b in cell.basis],
        "gram": [_fracs(r) for r in cell.gram],
        "halfspaces": _halfspace_json(cell.polytope, labels),
        "vertices": [{"orientation": str(d), "coords": _fracs(v)} for d, v in zip(cell.strong, cell.vertices)],
        "f_vector": list(geo.rank_counts()),
        "covering_radius_sq": str(cell.covering_radius_sq),
        "face_lattice": geo.to_json(fmt),
    }
    return res, geo.to_dot(fmt), True


def cmd_voronoi_cut(g, caps, args):
    cell = CutCell(g, caps)
    geo = cut_face_poset_geometric(g, caps, cell)
    labels = ["{" + ",".join(map(str, sorted(s))) + "}" for s in cell.bond_sets]
    fmt = lambda key: " | ".join(labels[j] for j in key)  # noqa: E731
    res = {
        "dimension": cell.dimension,
        "coordinates": "potentials f(v) for v != 0, f(0) = 0",
        "gram": [_fracs(r) for r in cell.laplacian],
        "halfspaces": _halfspace_json(cell.polytope, labels),
        "vertices": [{"orientation": str(d), "coords": _fracs(v)} for d, v in zip(cell.acyclic, cell.vertices)],
        "f_vector": list(geo.rank_counts()),
        "covering_radius_sq": str(cell.covering_radius_sq),
        "face_lattice": geo.to_json(fmt),
    }
    return res, geo.to_dot(fmt), True


def counterexample(g: Multigraph, side: str, report: dict, caps: Caps) -> dict:
    """Graph, both posets and the failing flags for an instance that failed."""
    failing = sorted(k for k, v in report.items() if v is False)
    dump = {"graph": g.to_json(), "side": side, "failing": failing,
            "first_mismatch": report.get("first_mismatch")}
    delaunay = report.get("delaunay") or {}
    dump["delaunay_failures"] = {k: v["examples"] for k, v in delaunay.items()
                                 if isinstance(v, dict) and not v.get("ok", True)}
    try:
        if side == "flow":
            cell = FlowCell(g, caps)
            dump["face_lattice"] = face_poset_geometric(g, caps, cell).to_json()
            dump["orientation_poset"] = enumerate_sc(g, caps).to_json(_arcs)
        else:
            cell = CutCell(g, caps)
            dump["face_lattice"] = cut_face_poset_geometric(g, caps, cell).to_json()
            dump["orientation_poset"] = enumerate_cac(g, caps).to_json(_arcs)
    except LatflowError as exc:
        dump["posets_unavailable"] = str(exc)
    return dump


def cmd_verify(g, caps, args):
    flow = verify_flow_side(g, caps, args.radius, witness=True)
    cut = verify_cut_side(g, caps, args.radius, witness=True)
    ok = flow["ok"] and cut["ok"]
    res = {"flow": flow, "cut": cut, "ok": ok}
    if not ok:
        res["counterexamples"] = [counterexample(g, r["side"], r, caps) for r in (flow, cut) if not r["ok"]]
    return res, None, ok


def cmd_covering_flow(g, caps, args):
    rep = covering_number_flow(g, caps, local_search_seed=args.seed)
    return rep.to_json(), None, rep.ok


def cmd_covering_cut(g, caps, args):
    rep = covering_number_cut(g, caps, local_search_seed=args.seed)
    return rep.to_json(), None, rep.ok


def cmd_quotients(g, caps, args):
    res = {}
    ok = True
    sc = enumerate_sc(g, caps)
    fcell = FlowCell(g, caps)
    qs = quotient_sc(g, sc)
    qf = quotient_face_poset(g, caps, fcell, face_poset_combinatorial(g, caps, fcell, sc))
    iso = poset_isomorphic(qf, qs, caps)[0]
    res["flow"] = {"orientation_classes": list(qs.rank_counts()), "face_classes": list(qf.rank_counts()),
                   "isomorphic": iso, "quotient": qs.to_json(_arcs)}
    ok &= iso
    cac = enumerate_cac(g, caps)
    ccell = CutCell(g, caps)
    qc = quotient_cac(g, cac, caps)
    qcf = quotient_cut_face_poset(g, caps, ccell, cut_face_poset_combinatorial(g, caps, ccell, cac))
    iso = poset_isomorphic(qcf, qc, caps)[0]
    res["cut"] = {"orientation_classes": list(qc.rank_counts()), "face_classes": list(qcf.rank_counts()),
                  "isomorphic": iso, "quotient": qc.to_json(_arcs)}
    ok &= iso
    res["ok"] = ok
    return res, qs.to_dot(_arcs) + qc.to_dot(_arcs), ok


PER_GRAPH = {
    "sc-poset": cmd_sc_poset,
    "cac-poset": cmd_cac_poset,
    "voronoi-flow": cmd_voronoi_flow,
    "voronoi-cut": cmd_voronoi_cut,
    "verify": cmd_verify,
    "covering-flow": cmd_covering_flow,
    "covering-cut": cmd_covering_cut,
    "quotients": cmd_quotients,
}


# -- corpus ----------------------------------------------------------------------

def run_instance(task) -> dict:
    """Verify one corpus graph; ``task`` is ``(name, n, edges, caps, radius)`` so it pickles."""
    name, n, edges, caps, radius = task
    g = Multigraph.from_edges(n, edges)
    out = {"name": name, "graph": g.to_json()}
    try:
        flow = verify_flow_side(g, caps, radius)
        cut = verify_cut_side(g, caps, radius)
    except ResourceLimitError as exc:
        out.update(ok=False, error=str(exc), cap_exceeded=True)
        return out
    out["flow"] = {"f_vector": flow["f_vector"], "quotient_counts": flow["quotient_counts"], "ok": flow["ok"]}
    out["cut"] = {"f_vector": cut["f_vector"], "quotient_counts": cut["quotient_counts"], "ok": cut["ok"],
                  "cut_element_law": cut["delaunay"]["cut_element_law"]["ok"] if radius is not None else None}
    out["ok"] = flow["ok"] and cut["ok"]
    if not out["ok"]:
        out["counterexamples"] = [counterexample(g, r["side"], r, caps) for r in (flow, cut) if not r["ok"]]
    return out


def run_corpus(seed: int = 0, count: int = 100, caps: Caps = CORPUS_CAPS, radius: int | None = 2,
               jobs: int = 1, include_fixed: bool = True) -> list[dict]:
    graphs = dict(fixed_suite()) if include_fixed else {}
    graphs.update(random_corpus(seed, count))
    tasks = [(name, g.n, list(g.edges), caps, radius) for name, g in graphs.items()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_instance, tasks))
    return [run_instance(t) for t in tasks]


# -- driver ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latflow", description="Voronoi cells of graph flow and cut lattices.")
    p.add_argument("--cmd", required=True, choices=COMMANDS)
    p.add_argument("--input", action="append", default=[], metavar="PATH",
                   help="graph file (text or JSON), or @name for a built-in graph; repeatable")
    p.add_argument("--format", default="json", choices=FORMATS)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--max-poset", type=int)
    p.add_argument("--max-halfspaces", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--count", type=int, default=100, help="random graphs for the corpus command")
    p.add_argument("--radius", type=int, default=2, help="lattice box radius for intersection scans")
    p.add_argument("--output", help="write the report here instead of stdout")
    return p


def resolve_caps(args, base: Caps) -> Caps:
    caps = Caps.from_env(base)
    return caps.replace(max_edges=args.max_edges, max_poset=args.max_poset, max_halfspaces=args.max_halfspaces)


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v) and len(v) <= 200:
            lines.append(f"{pad}{k}:")
            for x in v:
                lines.append(f"{pad}  -")
                lines.extend(_text(x, indent + 2))
        elif isinstance(v, list) and len(v) > 8:
            lines.append(f"{pad}{k}: <{len(v)} items>")
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, default=_default, ensure_ascii=False)}")
    return lines


def render(report: dict, fmt: str, dots: list[str]) -> str:
    if fmt == "json":
        return dumps(report)
    if fmt == "dot":
        return "".join(dots)
    return "\n".join(_text(report)) + "\n"


def run(args) -> tuple[int, str]:
    if args.jobs < 1 or args.count < 0 or (args.radius is not None and args.radius < 0):
        raise UsageError("--jobs must be positive; --count and --radius non-negative")
    if args.cmd == "corpus":
        if args.format == "dot":
            raise UsageError("the corpus command has no DOT output")
        caps = resolve_caps(args, CORPUS_CAPS)
        results = run_corpus(args.seed, args.count, caps, args.radius, args.jobs)
        failed = [r["name"] for r in results if not r["ok"]]
        capped = any(r.get("cap_exceeded") for r in results)
        report = {"command": "corpus", "seed": args.seed, "count": args.count, "instances": len(results),
                  "failed": failed, "results": results, "ok": not failed}
        code = EXIT_INPUT if capped else (EXIT_FAIL if failed else EXIT_OK)
        return code, render(report, args.format, [])

    if not args.input:
        raise UsageError(f"--cmd {args.cmd} needs at least one --input")
    fn = PER_GRAPH[args.cmd]
    if args.format == "dot" and args.cmd not in ("sc-poset", "cac-poset", "voronoi-flow", "voronoi-cut", "quotients"):
        raise UsageError(f"--format dot is not available for {args.cmd}")
    caps = resolve_caps(args, Caps())
    graphs = [(source, load_graph(source)) for source in args.input]
    results, dots, ok, code = [], [], True, EXIT_OK
    for source, g in graphs:
        entry = {"input": source, "graph": g.to_json()}
        try:
            res, dot, good = fn(g, caps, args)
        except ResourceLimitError as exc:
            entry.update(error=str(exc), cap_exceeded=True)
            results.append(entry)
            code = EXIT_INPUT
            break
        entry.update(res)
        entry["ok"] = good
        results.append(entry)
        if dot:
            dots.append(dot)
        ok &= good
    if code == EXIT_OK and not ok:
        code = EXIT_FAIL
    report = {"command": args.cmd, "results": results, "ok": ok and code == EXIT_OK}
    return code, render(report, args.format, dots)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = run(args)
    except (GraphError, UsageError, ValueError) as exc:
        print(f"latflow: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        sys.stdout.write(dumps({"command": args.cmd, "ok": False, "error": str(exc), "details": exc.details}))
        return EXIT_FAIL
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
