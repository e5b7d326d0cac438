from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from frobrep.cartan import named
from frobrep.cli import main
from frobrep.weyl import coxeter

DATA = Path(__file__).resolve().parent.parent / "data" / "cartan"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", str(DATA / "B2.json"))
    doc = json.loads(out)
    assert code == 0 and doc["type"] == "Dynkin" and doc["shape"]
    code, out, _ = run(capsys, "classify", str(DATA / "Kronecker.json"))
    assert json.loads(out)["type"] == "Euclidean"


@pytest.mark.parametrize("name,count", [("A2", 3), ("B2", 4), ("G2", 6), ("A3", 6), ("D4", 12), ("F4", 24)])
def test_roots(capsys, name, count):
    code, out, _ = run(capsys, "roots", str(DATA / f"{name}.json"))
    doc = json.loads(out)
    assert code == 0 and doc["agree"] and doc["count"] == count


def test_roots_tsv(capsys):
    code, out, _ = run(capsys, "--format", "tsv", "roots", str(DATA / "A2.json"))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "root\tvertex\tr" and len(lines) == 5


def test_algebra_build(capsys):
    code, out, _ = run(capsys, "algebra", "build", "G2")
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "algebra" and doc["cartan"]["D"] == [3, 1]


def test_rep_ops(capsys):
    code, out, _ = run(capsys, "rep", "ext", "--algebra", "A2", "--module", "E2", "--other", "E1")
    assert code == 0 and json.loads(out)["dim"] == 1
    code, out, _ = run(capsys, "rep", "hom", "--algebra", "B2", "--module", "P1", "--other", "P2")
    assert code == 0 and json.loads(out)["dim"] == 2
    code, out, _ = run(capsys, "rep", "tau", "--sign", "-", "--algebra", "B2", "--module", "root:1,1")
    doc = json.loads(out)
    assert code == 0 and tuple(doc["modules"][0]["rank"]) == coxeter(named("B2").C, -1, (1, 1))
    code, out, _ = run(capsys, "rep", "reflect", "--algebra", "A2", "--module", "E1")
    assert code == 0 and json.loads(out)["modules"][0]["dims"] == [0, 0]


def test_module_from_file(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--algebra", "B2")
    assert code == 0
    f = tmp_path / "reps.json"
    f.write_text(json.dumps(json.loads(out)["representations"]))
    code, out, _ = run(capsys, "rep", "hom", "--algebra", "B2", "--module", f"{f}#3", "--other", f"{f}#3")
    assert code == 0 and json.loads(out)["dim"] >= 1
    g = tmp_path / "enum.json"
    assert run(capsys, "enumerate", "--algebra", "B2", "-o", str(g))[0] == 0
    code, out, _ = run(capsys, "rep", "hom", "--algebra", "B2", "--module", f"{g}#3", "--other", f"{f}#3")
    assert code == 0 and json.loads(out)["dim"] >= 1


def test_enumerate_refuses_non_dynkin(capsys):
    code, out, _ = run(capsys, "enumerate", "--algebra", "Kronecker")
    assert code == 1 and json.loads(out) == {"error": "not Dynkin"}


@pytest.mark.parametrize("check", ["bijection", "adjunction", "ar-formula", "gorenstein", "gp", "tilting"])
def test_verify_checks_pass(capsys, check):
    code, out, _ = run(capsys, "--instances", "8", "--fuzz", "8", "verify", check, "--algebra", "B2")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["failures"] == []


def test_tilt_check(capsys):
    code, out, _ = run(capsys, "tilt-check", "--algebra", "A3")
    assert code == 0 and json.loads(out)["routes_agree"]


@pytest.mark.parametrize("argv", [
    ["classify", "/nonexistent.json"],
    ["algebra", "build", "Q9"],
    ["rep", "hom", "--algebra", "A2", "--module", "P1"],
    ["rep", "tau", "--algebra", "A2", "--module", "root:3,3"],
    ["--field", "4", "algebra", "build", "A2"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("frobrep:")


def test_garbage_file_exits_2(capsys, tmp_path):
    f = tmp_path / "g.json"
    f.write_text("[1, 2")
    assert run(capsys, "roots", str(f))[0] == 2


def test_seed_env_determinism(capsys, monkeypatch):
    monkeypatch.setenv("FROBREP_SEED", "11")
    a = run(capsys, "rep", "tau", "--algebra", "B2", "--module", "random:0")[1]
    b = run(capsys, "--seed", "99", "rep", "tau", "--algebra", "B2", "--module", "random:0")[1]
    assert a == b
    monkeypatch.setenv("FROBREP_SEED", "12")
    c = run(capsys, "rep", "tau", "--algebra", "B2", "--module", "random:0")[1]
    assert c != a


def test_jobs_output_identical(capsys):
    args = ["--instances", "12", "verify", "adjunction", "--algebra", "B2"]
    a = json.loads(run(capsys, *args)[1])
    b = json.loads(run(capsys, "--jobs", "3", *args)[1])
    a.pop("config"), b.pop("config")
    assert a == b


def test_output_flag(capsys, tmp_path):
    f = tmp_path / "o.json"
    assert run(capsys, "-o", str(f), "algebra", "build", "A2")[0] == 0
    assert json.loads(f.read_text())["kind"] == "algebra"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "frobrep", "roots", str(DATA / "A2.json")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["count"] == 3
