import json
import subprocess
import sys

import pytest

from inflatorkit import repro
from inflatorkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_theta(tmp_path, capsys):
    sub = tmp_path / "theta.json"
    sub.write_text(json.dumps({"field": "Qt", "ambient": 2, "rows": [["1", "t"]]}))
    code, out, _ = run(capsys, "eval", "val0", str(sub))
    assert code == 0
    res = json.loads(out)["result"]
    assert res["length"] == 1
    assert res["element"]["parts"][0]["rows"] == [["1", "0"]]


def test_eval_zero_subspace(capsys):
    code, out, _ = run(capsys, "eval", "gerald", '{"field": "Qt", "ambient": 2, "rows": []}')
    assert code == 0 and json.loads(out)["result"]["length"] == 0


def test_eval_field_mismatch_exits_2(capsys):
    code, _, err = run(capsys, "eval", "val0", '{"field": "Qi", "ambient": 1, "rows": [["i"]]}')
    assert code == 2 and "error" in err


def test_bad_input_exits_2(capsys):
    assert run(capsys, "check-morphism", '{"type": "nope"}')[0] == 2
    assert run(capsys, "suite", "unknown")[0] == 2
    assert run(capsys, "repro", "unknown")[0] == 2


def test_tame_and_mvtype(capsys):
    code, out, _ = run(capsys, "tame", "gerald", "--element", "t+1", "--qs", "0,1,2")
    assert code == 1 and json.loads(out)["result"]["classification"] == "Wild"
    code, _, _ = run(capsys, "mvtype", "product01", "--samples", "1/(t*(t-1)),t", "--qs", "0,1")
    assert code == 0
    code, _, _ = run(capsys, "mvtype", "gerald", "--samples", "t+1", "--qs", "0,1")
    assert code == 1


def test_mutate_and_limit_ring(capsys):
    code, out, _ = run(capsys, "mutate", "fiona", "--line", "1,i")
    assert code == 0 and json.loads(out)["result"]["codomain"] == [{"field": "Q", "mult": 2}]
    code, out, _ = run(capsys, "limit-ring", "gerald", "--element", "t+1", "--qs", "0,1")
    assert code == 0 and json.loads(out)["result"]["in_limit_ring"]


def test_fundamental(capsys):
    code, out, _ = run(capsys, "fundamental", "val0", "--element", "t")
    res = json.loads(out)["result"]
    assert code == 0 and res["in_R"] and res["in_I"]


def test_lattice_commands(capsys):
    assert run(capsys, "lattice", "rank", "M3")[0] == 0
    assert run(capsys, "lattice", "flatten", "Div(60)")[0] == 0
    code, out, _ = run(capsys, "lattice", "validate", "N5")
    assert code == 0 and json.loads(out)["result"]["modular"] is False
    assert run(capsys, "lattice", "rank", "N5")[0] == 1


def test_hahn_endless(capsys):
    code, out, _ = run(capsys, "hahn", "endless", "--line", "1,t^(1/3)")
    res = json.loads(out)["result"]
    assert code == 0 and res["x"] == "t^(16/9)" and res["gamma"] == "5/3"


@pytest.mark.parametrize("name", ["lattice", "hahn"])
def test_suites(capsys, name):
    assert run(capsys, "suite", name)[0] == 0


@pytest.mark.parametrize("example", sorted(repro.CATALOG))
def test_repro_ids(capsys, example):
    code, out, _ = run(capsys, "repro", example)
    meta = json.loads(out)["result"]["meta"]
    assert code == 0 and meta["id"] == example and meta["source"]


def test_repeated_runs_byte_identical(capsys):
    a = run(capsys, "check-morphism", "gerald", "--trials", "10", "--seed", "5")[1]
    b = run(capsys, "check-morphism", "gerald", "--trials", "10", "--seed", "5")[1]
    assert a == b
    c = run(capsys, "malleable", "fiona", "--trials", "5")[1]
    d = run(capsys, "malleable", "fiona", "--trials", "5")[1]
    assert c == d and json.loads(c)["seed"] == 20240601


def test_out_and_pretty(tmp_path, capsys):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "repro", "beth-ring", "--pretty", "--out", str(target))
    assert code == 0 and out == ""
    assert "status: pass" in target.read_text()


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "inflatorkit", "repro", "calvin-ring"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and '"status": "pass"' in p.stdout
