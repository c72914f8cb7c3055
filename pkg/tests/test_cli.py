import io
import json

import pytest

from steinpres.cli import run


def _run(*argv):
    buf = io.StringIO()
    res = run(list(argv), out=buf)
    return res, buf.getvalue()


def test_present_gap():
    res, text = _run("present", "--diagram", "A2", "--ring", "gf2", "--out", "gap")
    assert res.exit_code == 0
    assert "F := FreeGroup(6);" in text and "rels := [" in text


def test_present_json_schema():
    res, text = _run("present", "--diagram", "A1", "--ring", "z/2", "--out", "json")
    doc = json.loads(text)
    assert set(doc) >= {"diagram", "ring", "generators", "relators"}
    assert doc["generators"] == ["S1", "X1_0", "X1_1"]


def test_byte_identical():
    args = ("--json", "present", "--diagram", "B2", "--ring", "z/3", "--prune")
    assert _run(*args)[1] == _run(*args)[1]


def test_verify_symbolic_g2():
    res, _ = _run("verify", "--diagram", "G2", "--ring", "laurent(r;t,u)")
    assert res.exit_code == 0


def test_verify_sampled_is_seeded():
    a = _run("--json", "verify", "--diagram", "A2", "--ring", "z/3", "--sample", "10", "--seed", "4")[1]
    b = _run("--json", "verify", "--diagram", "A2", "--ring", "z/3", "--sample", "10", "--seed", "4")[1]
    assert a == b and json.loads(a)["exit_code"] == 0


def test_unipotent_reports_index():
    res, text = _run("--json", "unipotent-gen", "--diagram", "B2", "--field", "gf2", "--gens", "s,l")
    assert res.exit_code == 0
    assert json.loads(text)["result"]["index"] == 2


def test_autos():
    res, _ = _run("autos", "--type", "b2", "--field", "gf2")
    assert res.exit_code == 0


def test_wstar_and_stabilizer():
    assert _run("wstar-check", "--diagram", "B2")[0].exit_code == 0
    res, text = _run("stabilizer", "--diagram", "A3", "--node", "2")
    assert res.exit_code == 0 and "r 1,3" in text


def test_roots():
    res, text = _run("--json", "roots", "--diagram", "G2")
    assert res.exit_code == 0
    assert len(json.loads(text)["result"]["roots"]) == 12
    assert _run("roots", "--diagram", "A1~")[0].exit_code == 2
    res, text = _run("--json", "roots", "--diagram", "A1~", "--bound", "3")
    assert len(json.loads(text)["result"]["roots"]) == 12


def test_enumerate():
    res, text = _run("--json", "enumerate", "--diagram", "A1", "--ring", "z/3")
    assert json.loads(text)["result"]["order"] == 24


@pytest.mark.parametrize(
    "argv",
    [
        ["present", "--diagram", "Q9", "--ring", "gf2"],
        ["present", "--diagram", "A2", "--ring", "gf6"],
        ["present", "--diagram", "A2"],
        ["stabilizer", "--diagram", "A2", "--node", "7"],
        ["nonsense"],
    ],
)
def test_usage_errors(argv, capsys):
    assert _run(*argv)[0].exit_code == 2
