import io
import json

import pytest

from hopfmerge.cli import main

from conftest import SMALL


def run(argv, stdin=""):
    out = io.StringIO()
    rc = main(argv, stdin=io.StringIO(stdin), stdout=out)
    return rc, out.getvalue()


def run_json(argv, stdin=""):
    rc, text = run(["--json"] + argv, stdin)
    doc = json.loads(text)
    assert doc["schema"] == 1
    return rc, doc


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps(SMALL))
    return str(path)


def test_enum_commands():
    rc, text = run(["enum", "cuts", "{a {b c}}"])
    assert rc == 0 and len(text.splitlines()) == 11
    assert run(["enum", "quotient", "{a {b c}}", "--cut", "1"]) == (0, "a\n")
    rc, text = run(["enum", "embeddings", "{a {b c}}"])
    assert text.split("\n")[:-1] == ["[[b c] a]", "[[c b] a]", "[a [b c]]", "[a [c b]]"]
    assert run(["enum", "abstract", "3", "--alphabet", "a"]) == (0, "{a {a a}}\n")


def test_ds_solve():
    rc, text = run(["ds", "solve", "4"])
    assert rc == 0 and text.splitlines()[-1] == "X_4 = 4*{x {x {x x}}} + {{x x} {x x}}"


def test_lr_commands():
    assert run(["lr", "product", "[x x]", "[x x]", "--form", "recursive"])[1] == "[[x x] x] + [x [x x]]\n"
    assert run(["lr", "antipode", "[x x]"]) == (0, "-[x x]\n")
    rc, doc = run_json(["lr", "coproduct", "[x x]"])
    assert rc == 0 and doc["command"] == "lr coproduct"


def test_mg_commands():
    assert run(["mg", "em", 'x:"sel(D) V"', 'y:"D"']) == (0, '[< x:"V" y:""]\n')
    rc, text = run(["mg", "im", '[< c:"lsr(W) C" [> d:"lse(W) D" v:""]]'])
    assert text == '[> d:"D" [< c:"C" v:""]]\n'
    rc, text = run(["mg", "im", '[< c:"C" d:""]'])
    assert rc == 2 and text.startswith("undefined")


def test_ws_commands():
    rc, doc = run_json(["ws", "merge", "{a b} | c", "a", "c", "--graded"])
    (term,) = doc["result"]["terms"]
    assert term["mtype"] == "Sideward" and term["degrees"] == [-1, 1]
    rc, doc = run_json(["ws", "merge", "{a b} | c", "a", "c", "--graded", "--minimal-search"])
    assert doc["result"]["terms"] == []
    assert run(["ws", "coproduct", "a"]) == (0, "1 ⊗ a + a ⊗ 1\n")


def test_ext_commands():
    assert run(["ext", "planarize", "{a b}", "--heads", "root:1"]) == (0, "[< b a]\n")
    assert run(["ext", "heads", "{a b}"])[1].split() == ["root:0", "root:1"]
    rc, doc = run_json(["ext", "lca", "{a {b c}}"])
    assert ["0", "10"] in doc["result"]["precedes"] and ["0", "11"] in doc["result"]["precedes"]


def test_stdin_dash():
    assert run(["lr", "product", "-", "-"], stdin="x\n[x x]\n")[0] == 0
    assert run(["ext", "planarize", "-", "--heads", "root:1"], stdin="{a b}\n")[1] == "[< b a]\n"


def test_syntax_errors_exit_2(capsys):
    assert run(["enum", "cuts", "{a b"])[0] == 2
    assert "position 4" in capsys.readouterr().err


def test_check_commands(small_config):
    rc, text = run(["check", "lr-coassoc", "--config", small_config])
    assert rc == 0 and "pass" in text
    rc, doc = run_json(["check", "left-ideal", "--config", small_config])
    (rep,) = doc["reports"]
    assert rc == 0 and rep["status"] == "expected-fail" and rep["witnesses"]
    assert {w["class"] for w in rep["witnesses"]} <= {
        "head of the product carries no licensor", "licensor of the head has no matching licensee"}
    assert run(["check", "no-such-law"])[0] == 2
    rc, text = run(["check", "--list"])
    assert "mg-left-ideal" in text


def test_module_checks(small_config):
    assert run(["lr", "check", "lr-assoc", "--max-degree", "2"])[0] == 0
    assert run(["lr", "check", "coassoc", "--max-degree", "2"])[0] == 0
    assert run(["mg", "check", "coideal", "--max-leaves", "4"])[0] == 0
    assert run(["ws", "check", "ws-product", "--max-leaves", "2"])[0] == 0
    rc, doc = run_json(["ext", "check", "section", "--name", "canonical-left", "--max-leaves", "3"])
    assert rc == 0


def test_check_json_is_deterministic(small_config):
    argv = ["--json", "check", "ws", "ext", "--config", small_config]
    assert run(argv)[1] == run(argv)[1]
    assert "wallTime" not in run(argv)[1]
    assert "wallTime" in run(argv + ["--timing"])[1]
