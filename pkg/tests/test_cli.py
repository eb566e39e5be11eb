import io
import json
import subprocess
import sys

import pytest

from artifact.cli import run


def _run(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def test_hermitian_points():
    code, text = _run(["curve", "points", "--family", "hermitian", "--q", "3", "--ext", "2"])
    rep = json.loads(text)
    assert code == 0
    (f,) = rep["findings"]
    assert f["value"] == 28 and f["status"] == "verified" and f["anchor"] == "Hermitian curve maximality"
    assert rep["schema"] == 1 and rep["parameters"] == {"family": "Hermitian", "q": 3, "ext": 2}


def test_verify_gauss_is_deterministic():
    a = _run(["verify", "gauss", "--q", "5"])
    b = _run(["verify", "gauss", "--q", "5"])
    assert a == b and a[0] == 0
    ids = [f["id"] for f in json.loads(a[1])["findings"]]
    assert ids == sorted(ids)


def test_mismatch_exit_code():
    code, text = _run(["verify", "hermitian", "--q", "3"])
    assert code == 1
    status = {f["id"]: f["status"] for f in json.loads(text)["findings"]}
    assert status["hermitian.tau.dimension.q3"] == "mismatch"
    assert status["curve.hermitian.maximal.q3"] == "verified"


@pytest.mark.parametrize("argv", [["--bogus"], ["verify", "nothing"], ["curve", "points", "--family", "quartic"],
                                  ["curve", "points", "--q", "4"], ["orders", "gr1", "--m", "0"], []])
def test_usage_errors(argv):
    assert _run(argv)[0] == 2


def test_budget_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("ARTIFACT_BUDGET_GRAPH_VERTICES", "10")
    code, _ = _run(["graph", "stats", "--q", "3", "--radius", "1", "--depth", "1"])
    assert code == 3
    assert "ARTIFACT_BUDGET_GRAPH_VERTICES" in capsys.readouterr().err


def test_table_format():
    code, text = _run(["--format", "table", "curve", "genus", "--family", "dl", "--q", "3"])
    assert code == 0 and "computed" in text and text.splitlines()[0].startswith("curve genus")


def test_graph_export_and_reimport(tmp_path):
    path = tmp_path / "g.json"
    code, _ = _run(["--out", str(path), "graph", "build", "--q", "3", "--radius", "1", "--graph-format", "json"])
    assert code == 0
    code, text = _run(["graph", "validate", "--input", str(path)])
    assert code == 0 and json.loads(text)["findings"][0]["value"]["vertices"] == 9
    code, dot = _run(["graph", "build", "--q", "3", "--radius", "1"])
    assert dot.count(" -- ") == 8


def test_orders_and_local_commands():
    code, text = _run(["orders", "table", "--q", "3", "--mmax", "2"])
    assert code == 1          # the m = 0 row disagrees with the table
    st = {f["id"]: f["status"] for f in json.loads(text)["findings"]}
    assert st["orders.table.unramified.m1.q3"] == "verified" and st["orders.table.ramified1.m0.q3"] == "mismatch"
    code, text = _run(["orders", "gr1", "--q", "3", "--ext", "unramified", "--m", "1"])
    assert code == 0 and json.loads(text)["findings"][0]["value"] == 27
    assert _run(["local", "delta", "--q", "3", "--ext", "ramified1", "--m", "1"])[0] == 0
    assert _run(["local", "classify", "--q", "3", "--ext", "ramified2", "--depth", "1"])[0] == 0


def test_group_commands():
    code, text = _run(["group", "dl", "--q", "3"])
    assert code == 0
    code, text = _run(["group", "oddLevel", "--q", "3"])
    f = json.loads(text)["findings"][0]
    assert code == 0 and f["value"] == {"order": 6, "homomorphism": True}


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "artifact", "curve", "genus", "--family", "hyperelliptic", "--q", "5"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["findings"][0]["value"] == 2
