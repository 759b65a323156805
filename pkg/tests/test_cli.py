import io
import json
import sys

import pytest

from chromix.cli import SCHEMA, main
from chromix.core import Signature, parse, serialize
from chromix.generators import kclique_gadget
from chromix.targets import t03


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    report = json.loads(out)
    assert report["schema"] == SCHEMA and report["exit_code"] == code
    return code, report


ARC = "nmgraph 1 0\nvertices 2\narc 0 1 2\n"


def test_target_round_trip(capsys):
    code, out, _ = run(capsys, "target", "t03")
    assert code == 0 and parse(out) == t03()
    code, out, _ = run(capsys, "target", "walecki", "--n", "0", "--m", "2")
    assert parse(out).num_vertices == 5


def test_check_p21(capsys, files):
    t = files("t03.nm", serialize(t03()))
    assert run(capsys, "check", "p21", t)[0] == 0
    code, out, _ = run(capsys, "target", "walecki", "--n", "0", "--m", "2")
    w = files("w.nm", out)
    code, out, _ = run(capsys, "check", "p21", w)
    assert code == 1 and "witness=" in out


def test_check_expansion_regular_forbidden(capsys, files):
    code, out, _ = run(capsys, "target", "walecki", "--n", "1", "--m", "1")
    w = files("w.nm", out)
    assert run(capsys, "check", "expansion", w)[0] == 0
    assert run(capsys, "check", "regular", w, "--d", "2")[0] == 0
    assert run(capsys, "check", "regular", w)[0] == 2
    assert run(capsys, "check", "forbidden", files("t.nm", serialize(t03())))[0] == 0


def test_check_acyclic(capsys, files):
    g = files("c4.g", "graph\nvertices 4\nedge 0 1\nedge 1 2\nedge 2 3\nedge 0 3\n")
    assert run(capsys, "check", "acyclic", g, files("good", "0 1 0 2\n"))[0] == 0
    assert run(capsys, "check", "acyclic", g, files("bad", "0 1 0 1\n"))[0] == 1
    assert run(capsys, "check", "acyclic", g, files("junk", "a b\n"))[0] == 2


def test_hom_find(capsys, files):
    gadget = files("g16.nm", serialize(kclique_gadget(16, Signature(0, 3))))
    t = files("t03.nm", serialize(t03()))
    code, out, _ = run(capsys, "hom", "find", gadget, t)
    assert code == 1 and "status: none" in out
    small = files("g4.nm", serialize(kclique_gadget(4, Signature(0, 3))))
    code, report = run_json(capsys, "hom", "find", small, t)
    assert code == 0 and report["result"]["status"] == "found"
    assert len(report["result"]["map"]) == 10
    assert set(report["inputs"]) == {small, t}


def test_budget_exit(capsys, files):
    g = files("g12.nm", serialize(kclique_gadget(12, Signature(0, 3))))
    t = files("t03.nm", serialize(t03()))
    code, report = run_json(capsys, "hom", "find", g, t, "--budget", "10")
    assert code == 3 and report["result"]["status"] == "budget-exhausted"


def test_two_tree_and_circular(capsys, files):
    g = files("e.nm", "nmgraph 0 3\nvertices 3\nedge 0 1 1\nedge 1 2 3\n")
    t = files("t03.nm", serialize(t03()))
    assert run(capsys, "hom", "two-tree", g, t)[0] == 0
    c5 = files("c5.g", "graph\nvertices 5\n" + "".join(f"edge {i} {(i + 1) % 5}\n" for i in range(5)))
    assert run(capsys, "hom", "circular", c5, "--g", "2")[0] == 0
    k3 = files("k3.g", "graph\nvertices 3\nedge 0 1\nedge 1 2\nedge 0 2\n")
    assert run(capsys, "hom", "circular", k3, "--g", "2")[0] == 1
    code, _, err = run(capsys, "hom", "two-tree", files("k4.nm", serialize(kclique_gadget(2, Signature(0, 2)))), t)
    assert code == 2 and "signature" in err


def test_chrom(capsys, files):
    arc = files("arc.nm", ARC)
    code, report = run_json(capsys, "chrom", arc, "--max-k", "5")
    assert code == 0 and report["result"]["k"] == 2
    path = files("p.nm", "nmgraph 1 0\nvertices 3\narc 0 1 2\narc 1 2 2\n")
    code, report = run_json(capsys, "chrom", path, "--max-k", "2")
    assert code == 1 and report["result"]["status"] == "exceeds-max-k"


def test_mad_and_arboricity(capsys, files):
    k4 = files("k4.g", "graph\nvertices 4\n" + "".join(f"edge {u} {v}\n" for u in range(4) for v in range(u + 1, 4)))
    code, out, _ = run(capsys, "mad", k4)
    assert code == 0 and out.strip() == "mad: 3/1"
    code, report = run_json(capsys, "arboricity", k4, "--emit-forests")
    assert report["result"]["r"] == 2 and len(report["result"]["forests"]) == 2
    # an (n,m)-graph file is accepted through its underlying graph
    assert run(capsys, "mad", files("arc.nm", ARC))[1].strip() == "mad: 1/1"


def test_acyclic_color(capsys, files):
    c5 = files("c5.g", "graph\nvertices 5\n" + "".join(f"edge {i} {(i + 1) % 5}\n" for i in range(5)))
    code, report = run_json(capsys, "acyclic-color", c5, "--n", "1", "--m", "0")
    assert code == 0
    res = report["result"]
    assert res["palette"] <= res["bound"] and len(res["colors"]) == 5


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "gadget", "--k", "3", "--n", "1", "--m", "0")
    assert code == 0 and parse(out).num_vertices == 6
    a = run(capsys, "gen", "p2t", "--nv", "20", "--seed", "4", "--n", "0", "--m", "3")[1]
    b = run(capsys, "gen", "p2t", "--nv", "20", "--seed", "4", "--n", "0", "--m", "3")[1]
    assert a == b
    assert run(capsys, "gen", "lowmad", "--nv", "40", "--seed", "1", "--n", "0", "--m", "2")[0] == 0


@pytest.mark.parametrize("kind", ["p2t", "lowmad"])
def test_gen_requires_seed(capsys, kind):
    assert run(capsys, "gen", kind, "--nv", "20", "--n", "0", "--m", "2")[0] == 2


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(ARC))
    code, out, _ = run(capsys, "chrom", "-", "--max-k", "3")
    assert code == 0 and out.startswith("k: 2")


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        [],
        ["chrom", "/nonexistent/file.nm", "--max-k", "3"],
        ["gen", "gadget", "--k", "3", "--n", "0", "--m", "1"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_reports_line(capsys, files):
    bad = files("bad.nm", "nmgraph 1 0\nvertices 2\narc 0 1 3\n")
    code, _, err = run(capsys, "chrom", bad, "--max-k", "3")
    assert code == 2 and "line 3" in err


def test_json_flag_after_subcommand(capsys, files):
    code, out, _ = run(capsys, "mad", files("arc.nm", ARC), "--json")
    assert json.loads(out)["result"]["mad"] == "1/1"


def test_expansion_guard_is_error(capsys, files):
    t = files("big.nm", "nmgraph 0 2\nvertices 25\nedge 0 1 1\n")
    assert run(capsys, "check", "expansion", t)[0] == 2
