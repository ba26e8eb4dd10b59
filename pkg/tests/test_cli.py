import json

import pytest

from latflow.cli import main, run_corpus
from latflow.config import Caps
from latflow.errors import DisconnectedGraphError, GraphSyntaxError
from latflow.graph import genus
from latflow.graphio import format_graph_text, parse_graph_file, parse_graph_text


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_examples():
    g = parse_graph_text("2 3\n0 1\n0 1\n0 1")
    assert (g.n, g.m, genus(g)) == (2, 3, 2)
    loop = parse_graph_text("1 1\n0 0")
    assert loop.edges == ((0, 0),)
    with pytest.raises(DisconnectedGraphError):
        parse_graph_text("4 2\n0 1\n2 3")


def test_parse_errors_carry_line():
    with pytest.raises(GraphSyntaxError) as info:
        parse_graph_text("# header next\n2 2\n0 1\n0 9\n")
    assert info.value.line == 4
    with pytest.raises(GraphSyntaxError):
        parse_graph_text("2 3\n0 1\n")


def test_json_and_text_agree(tmp_path):
    text = write(tmp_path, "g.txt", "3 3  # triangle\n0 1\n1 2\n2 0\n")
    js = write(tmp_path, "g.json", json.dumps({"n": 3, "m": 3, "edges": [[0, 1], [1, 2], [2, 0]]}))
    assert parse_graph_file(text) == parse_graph_file(js)
    g = parse_graph_file(text)
    assert parse_graph_text(format_graph_text(g)) == g


def test_verify_theta(tmp_path, capsys):
    path = write(tmp_path, "theta.txt", "2 3\n0 1\n0 1\n0 1\n")
    code, out, _ = run_cli(capsys, "--cmd", "verify", "--input", path)
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["flow"]["f_vector"] == [6, 6, 1]
    assert res["flow"]["phi_is_isomorphism"] and len(res["flow"]["witness"]) == 13


def test_covering_flow_c4(tmp_path, capsys):
    path = write(tmp_path, "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n")
    code, out, _ = run_cli(capsys, "--cmd", "covering-flow", "--input", path)
    assert code == 0
    assert json.loads(out)["results"][0]["value"]["exact"] == "1/1"


def test_sc_poset_tree(tmp_path, capsys):
    path = write(tmp_path, "tree.txt", "3 2\n0 1\n1 2\n")
    code, out, _ = run_cli(capsys, "--cmd", "sc-poset", "--input", path)
    assert code == 0
    assert json.loads(out)["results"][0]["poset"]["size"] == 1


def test_disconnected_input_exits_2(tmp_path, capsys):
    path = write(tmp_path, "bad.txt", "4 2\n0 1\n2 3\n")
    code, _, err = run_cli(capsys, "--cmd", "sc-poset", "--input", path)
    assert code == 2 and "disconnected" in err


def test_cap_exceeded_exits_2(capsys):
    code, out, _ = run_cli(capsys, "--cmd", "voronoi-flow", "--input", "@K4", "--max-poset", "10")
    assert code == 2
    res = json.loads(out)["results"][0]
    assert res["cap_exceeded"]


def test_env_caps(monkeypatch, capsys):
    monkeypatch.setenv("LATFLOW_CAPS", "max_edges=2")
    code, _, _ = run_cli(capsys, "--cmd", "sc-poset", "--input", "@theta")
    assert code == 2


def test_dot_output(capsys):
    code, out, _ = run_cli(capsys, "--cmd", "cac-poset", "--input", "@K3", "--format", "dot")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 18


def test_text_output(capsys):
    code, out, _ = run_cli(capsys, "--cmd", "covering-cut", "--input", "@K2", "--format", "text")
    assert code == 0 and 'exact: "1/4"' in out


def test_reports_are_deterministic(capsys):
    argv = ("--cmd", "quotients", "--input", "@theta", "--input", "@K23")
    first = run_cli(capsys, *argv)
    assert first == run_cli(capsys, *argv)
    assert first[0] == 0


def test_corpus_reproducible_and_parallel():
    caps = Caps(max_dimension=8)
    serial = run_corpus(seed=5, count=4, caps=caps, include_fixed=False)
    assert serial == run_corpus(seed=5, count=4, caps=caps, include_fixed=False, jobs=2)
    assert all(r["ok"] for r in serial)
