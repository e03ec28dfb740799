from __future__ import annotations

import csv
import json
import subprocess
import sys

import pytest

from orthofq.cli import ATLAS_COLUMNS, main

XY = {"field": {"p": 2, "k": 1}, "n": 2, "kind": "quadratic", "matrix": [[0, 1], [0, 0]]}
D11 = {"field": {"p": 3}, "n": 2, "kind": "bilinear", "matrix": [[1, 0], [0, 1]]}


@pytest.fixture
def put(tmp_path):
    def _put(doc, name="in.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return _put


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys, put):
    code, out, _ = run(capsys, "classify", "--form", put(XY))
    assert code == 0 and json.loads(out) == {"type": "plus", "witt": 1, "disc": None, "arf": 0}
    code, out, _ = run(capsys, "classify", "--form", put(D11))
    assert code == 0 and json.loads(out)["type"] == "minus"


def test_classify_errors(capsys, put):
    assert run(capsys, "classify", "--form", put('{"field": {"p": 3}, "n": 2,'))[0] == 2
    singular = dict(D11, matrix=[[1, 0], [0, 0]])
    code, _, err = run(capsys, "classify", "--form", put(singular))
    assert code == 3 and "singular" in err
    custom = dict(D11, field={"p": 3, "k": 2, "modulus": [2, 1, 1]}, matrix=[[1, 0], [0, 1]])
    assert run(capsys, "classify", "--form", put(custom))[0] == 3
    assert run(capsys, "classify", "--form", put(custom), "--allow-custom-modulus")[0] == 0
    assert run(capsys, "classify")[0] == 2


def test_invariants(capsys, put):
    ident = {"form": D11, "matrix": [[1, 0], [0, 1]]}
    code, out, _ = run(capsys, "invariants", put(ident))
    assert code == 0 and json.loads(out) == {"det": 1, "dickson": 0, "spinor": "square"}
    refl = {"form": D11, "matrix": [[2, 0], [0, 1]]}
    assert json.loads(run(capsys, "invariants", put(refl))[1]) == {"det": -1, "dickson": 1}
    tv = {"form": {**XY, "matrix": [[1, 1], [0, 0]]}, "matrix": [[1, 1], [0, 1]]}
    assert json.loads(run(capsys, "invariants", put(tv))[1])["dickson"] == 1
    shear = {"form": D11, "matrix": [[1, 1], [0, 1]]}
    assert run(capsys, "invariants", put(shear))[0] == 3


def test_atlas_json(capsys):
    code, out, _ = run(capsys, "atlas", "--p", "3", "--nmax", "2")
    rows = json.loads(out)
    assert code == 0
    assert [(r["type_tag"], r["order"], r["verified"]) for r in rows] == [("plus", 4, True), ("minus", 8, True)]


def test_atlas_csv(capsys, tmp_path):
    out_file = tmp_path / "atlas.csv"
    code, _, _ = run(capsys, "atlas", "--p", "2", "--nmax", "3", "--format", "csv", "--out", str(out_file))
    assert code == 0
    with open(out_file, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ATLAS_COLUMNS
    odd = rows[-1]
    # O(3, 2) is isomorphic to Sp(2, 2)
    assert (odd["n"], odd["type_tag"], odd["order"], odd["verified"]) == ("3", "odd", "6", "true")


def test_atlas_errors(capsys):
    assert run(capsys, "atlas", "--p", "2", "--nmax", "1")[0] == 2
    code, _, err = run(capsys, "atlas", "--p", "5", "--nmax", "5")
    assert code == 4 and "n=5" in err


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "isotropy")
    report = json.loads(out)
    assert code == 0 and report["passed"] and len(report["checks"]) == 12
    assert run(capsys, "verify", "no-such-suite")[0] == 2


def test_verify_cdk_reports_exception(capsys):
    code, out, _ = run(capsys, "verify", "cdk-exception")
    checks = {c["check"]: c for c in json.loads(out)["checks"]}
    assert code == 0
    assert checks["O+(4,2)"]["proper_subgroup"] and checks["O+(4,2)"]["index"] == 2


def test_verify_budget_exit(capsys):
    assert run(capsys, "verify", "orders", "--budget", "100")[0] == 4


def test_group_command(capsys):
    code, out, _ = run(capsys, "group", "--p", "3", "--n", "2", "--type", "minus")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == 8
    assert run(capsys, "group", "--p", "3", "--n", "2")[0] == 2


def test_clifford_check(capsys, put):
    code, out, _ = run(capsys, "clifford", "check", "--form", put(XY), "--triples", "20")
    assert code == 0 and json.loads(out)["passed"]


def test_module_entry_point(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(D11))
    proc = subprocess.run([sys.executable, "-m", "orthofq", "classify", "--form", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["type"] == "minus"


def test_budget_env_default(capsys, monkeypatch):
    monkeypatch.setenv("ORTHO_BUDGET", "10")
    assert run(capsys, "group", "--p", "2", "--n", "4", "--type", "plus")[0] == 4
