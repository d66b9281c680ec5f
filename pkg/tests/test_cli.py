import io as stdio
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from fgraphs import io
from fgraphs.cli import run
from fgraphs.graph import validate_graph

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def s(name):
    return str(SAMPLES / f"{name}.json")


def call(*argv):
    buf = stdio.StringIO()
    code = run(list(argv), buf)
    return code, json.loads(buf.getvalue()), buf.getvalue()


def test_validate_square():
    code, out, _ = call("validate", s("c4"))
    assert code == 0 and out["ok"]


def test_check_hom_and_kernel():
    code, _, _ = call("check-hom", s("c4"), s("k3"), s("c4_to_k3"))
    assert code == 0
    code, out, _ = call("kernel", s("c4"), s("k3"), s("c4_to_k3"))
    assert out["kernel"]["edge_classes"] == [["e1", "e4"], ["e2", "e3"]]
    assert out["kernel"]["vertex_classes"] == [["v1"], ["v2", "v4"], ["v3"]]


def test_bad_hom_is_a_false_verdict():
    bad = '{"edge_map":{"e1":"f1","e2":"f1","e3":"f2","e4":"f1"},' \
          '"vertex_map":{"v1":"w1","v2":"w2","v3":"w3","v4":"w2"}}'
    code, out, _ = call("check-hom", s("c4"), s("k3"), bad)
    assert code == 1 and out["failing_edge"] == "e2"


def test_ktuple_edges_not_related():
    code, out, _ = call("related", s("ktuple_left"), "e", s("ktuple_right"), "f")
    assert code == 1 and out == {"ok": False, "related": False}


def test_undirected_edges_related():
    code, out, _ = call("related", s("edge_vw"), "e", s("loop"), "l")
    assert code == 0 and out["related"]


def test_product_has_two_edges():
    code, out, _ = call("product", s("edge_vw"), s("edge_xy"))
    assert code == 0 and len(out["graph"]["edges"]) == 2


def test_cofree_counts():
    code, out, _ = call("cofree", s("upair"), s("colors_3x3"))
    assert code == 0 and len(out["graph"]["edges"]) == 18


def test_hom_search_count():
    code, out, _ = call("hom-search", s("c4"), s("k3"), "--count")
    assert out["count"] == 18
    code, out, _ = call("hom-search", s("c4"), s("k3"), "--limit", "3")
    assert len(out["homs"]) == 3


def test_satisfies_and_audit():
    pat = json.dumps({"colors": {"edge_colors": ["a"], "vertex_colors": ["x", "y"]},
                      "edge_subset": ["(a|{x})", "(a|{y})"], "vertex_subset": ["x", "y"]})
    assert call("satisfies", s("loop"), pat)[0] == 0
    code, out, _ = call("satisfies", s("edge_vw"), pat)
    assert code == 1 and out["coloring"]["vertex_map"] == {"v": "x", "w": "y"}
    code, out, _ = call("closure-audit", s("colors_1x2"), "--class", s("loop"),
                        "--universe", s("loop"), s("edge_vw"))
    assert code == 0 and out["members"] == [s("loop")]


@pytest.mark.parametrize("argv", [
    ["validate", s("c4")], ["factorize", s("c4"), s("k3"), s("c4_to_k3")],
    ["minimize", s("c4")], ["simplify", s("c4")], ["decompose", s("c4")],
    ["unit-embed", s("loop")], ["terminal", s("upair")], ["lattice", s("edge_vw")],
    ["kernel-relation", s("c4"), s("k3"), s("c4_to_k3")],
    ["largest-relation", s("edge_vw"), s("loop")], ["coproduct", s("c4"), s("k3")],
    ["regular-injective", s("loop")],
    ["generate", s("c4"), "--edges", "e1"], ["cogenerate", s("c4"), "--vertices", "v1,v2"],
    ["transform", s("c4"), "--kind", "minimize"],
])
def test_commands_succeed_and_are_byte_stable(argv):
    c1, out, t1 = call(*argv)
    c2, _, t2 = call(*argv)
    assert c1 == c2 == 0 and t1 == t2 and out["ok"]


def test_emitted_graphs_revalidate(tmp_path):
    for argv in (["product", s("edge_vw"), s("edge_xy")], ["minimize", s("c4")],
                 ["pushout", s("c4"), s("k3"), s("c4_to_k3"), s("k3"), s("c4_to_k3")]):
        _, out, _ = call(*argv)
        G = io.graph_from_json(out["graph"])
        assert validate_graph(G).ok
        f = tmp_path / "g.json"
        f.write_text(json.dumps(out["graph"]))
        assert call("validate", str(f))[0] == 0


def test_usage_errors():
    assert call("nope")[0] == 2
    assert call()[0] == 2
    assert call("validate", "/no/such/file.json")[0] == 2
    assert call("validate", "{not json")[0] == 2
    assert call("related", s("loop"), "zz", s("loop"), "l")[0] == 2
    code, out, _ = call("check-hom", s("c4"), s("k3"), '{"edge_map":{},"vertex_map":{}}')
    assert code == 2


def test_budget_flags_and_environment(monkeypatch):
    assert call("lattice", s("c4"), "--cap-enumeration", "5")[0] == 3
    monkeypatch.setenv("FGRAPH_CAPS", "5,100,100")
    assert call("lattice", s("c4"))[0] == 3
    assert call("lattice", s("c4"), "--cap-enumeration", "1000")[0] == 0
    monkeypatch.setenv("FGRAPH_CAPS", "garbage")
    assert call("lattice", s("c4"))[0] == 2


def test_hom_budget():
    assert call("hom-search", s("c4"), s("k3"), "--count", "--cap-homs", "3")[0] == 3


def test_output_file(tmp_path):
    dest = tmp_path / "out.json"
    buf = stdio.StringIO()
    assert run(["validate", s("c4"), "--output", str(dest)], buf) == 0
    assert buf.getvalue() == "" and json.loads(dest.read_text())["ok"]


def test_pretty_output():
    _, _, text = call("validate", s("c4"), "--pretty")
    assert text.startswith("{\n  ")


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=str(SAMPLES.parent / "src"))
    p = subprocess.run([sys.executable, "-m", "fgraphs", "related", s("ktuple_left"), "e",
                        s("ktuple_right"), "f"], capture_output=True, text=True, env=env)
    assert p.returncode == 1 and json.loads(p.stdout) == {"ok": False, "related": False}
