import json
import subprocess
import sys

import pytest

from clusterfree.cache import CACHE_ENV
from clusterfree.cli import main
from clusterfree.family import read_family


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def kv(out):
    return dict(line.split(" ", 1) for line in out.strip().splitlines())


def test_construct_and_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "s.txt"
    code, out, _ = run(capsys, "construct", "S", 10, 3, 1, "-o", path)
    assert code == 0
    assert kv(out)["size"] == "16" and kv(out)["closed_form"] == "16"
    assert len(read_family(path)) == 16
    code, out, _ = run(capsys, "verify", path, 3, "--expect-matching", 2)
    assert code == 0 and kv(out)["cluster"] == "cluster-free"
    # re-reading reproduces the canonical serialization
    assert read_family(path).to_text() == path.read_text()


def test_construct_json_and_errors(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "L1", 20, 3, 2, "--json", "-o", tmp_path / "l1.json",
                       "--format", "json")
    assert code == 0 and json.loads(out)["size"] == 81
    assert len(read_family(tmp_path / "l1.json")) == 81
    code, _, err = run(capsys, "construct", "L4", 20, 3, 1)
    assert code == 2 and "usage" in err
    code, _, _ = run(capsys, "construct", "XX", 20, 3, 1)
    assert code == 2


def test_construct_L5_with_inner(capsys, tmp_path):
    inner = tmp_path / "inner.txt"
    inner.write_text("8 3\n1 2 3\n")
    code, out, _ = run(capsys, "construct", "L5", 14, 5, 1, "-d", 5, "--inner", inner)
    assert code == 0 and kv(out)["size"] == "72"


def test_verify(capsys, tmp_path):
    l3 = tmp_path / "l3.txt"
    run(capsys, "construct", "L3", 13, 4, 1, "-o", l3)
    code, _, _ = run(capsys, "verify", l3, 4, "--expect-matching", 2)
    assert code == 0
    code, _, _ = run(capsys, "verify", l3, 4, "--expect-matching", 3)
    assert code == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("6 3\n1 2 3\n1 4 5\n2 4 6\n")
    code, out, _ = run(capsys, "verify", bad, 3)
    assert code == 1
    assert kv(out)["cluster"] == "1 2 3; 1 4 5; 2 4 6"
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run(capsys, "verify", empty, 3)[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.txt", 3)[0] == 2


def test_turan(capsys):
    code, out, _ = run(capsys, "turan", "tight-path", 7, 3, "--l", 2)
    assert code == 0 and kv(out)["value"] == "7" and kv(out)["status"] == "proven-optimal"
    code, out, _ = run(capsys, "turan", "pattern", 3, 2, "--v", 2, "--e", 3)
    assert code == 0 and kv(out)["value"] == "6"
    code, out, err = run(capsys, "turan", "pattern", 1, 2, "--v", 2, "--e", 2)
    assert code == 0 and kv(out)["value"] == "unbounded" and "cannot embed" in err
    code, out, _ = run(capsys, "turan", "pattern", 5, 2, "--v", 3, "--e", 3, "--simple", "--json")
    assert code == 0 and json.loads(out)["value"] == "6"
    assert run(capsys, "turan", "pattern", 5, 2)[0] == 2
    assert run(capsys, "turan", "tight-path", 5, 2)[0] == 2


def test_turan_lower_bound_exit(capsys):
    code, out, _ = run(capsys, "turan", "tight-path", 13, 4, "--l", 2, "--budget", 50)
    assert code == 1 and kv(out)["status"] == "lower-bound-only"


def test_turan_witness_out(capsys, tmp_path):
    w = tmp_path / "w.txt"
    code, out, _ = run(capsys, "turan", "tight-path", 7, 3, "--l", 2, "--witness-out", w)
    assert code == 0 and kv(out)["witness"] == str(w)
    assert len(w.read_text().strip().splitlines()) == 8


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "f", 4, 2, 2, 0)
    assert code == 0 and kv(out)["value"] == "3"
    code, out, err = run(capsys, "extremal", "f", 6, 2, 2, 1)
    assert code == 1 and "infeasible" in out and "infeasible" in err
    _, g_out, _ = run(capsys, "extremal", "g", 5, 2, 3, 2)
    _, f_out, _ = run(capsys, "extremal", "f", 5, 2, 3, 1)
    assert kv(g_out)["value"] == kv(f_out)["value"] == "3"
    assert run(capsys, "extremal", "g", 5, 2, 3, 1)[0] == 2


def test_report(capsys):
    code, out, _ = run(capsys, "report", 20, 3, 3, 2)
    assert code == 0
    rep = json.loads(out)
    consts = {c["symbol"]: c for c in rep["constants"]}
    assert consts["c_1"]["value"] == 4 and consts["c_2"]["value"] == 5
    assert consts["c_1"]["theorem"]
    assert rep["lower_bound_construction"] in ("L1", "L2") and rep["lower_bound_value"] == 81
    assert any(b["asymptotic"] for b in rep["bounds"])
    code, out, _ = run(capsys, "report", 13, 4, 4, 1)
    rep = json.loads(out)
    assert rep["lower_bound_value"] == 61 and rep["lower_bound_construction"] == "L3"
    assert run(capsys, "report", 10, 3, 5, 1)[0] == 2


def test_report_values():
    from clusterfree.bounds import bound_report

    rep = bound_report(20, 4, 4, 2)
    assert rep.constant("c'_1").value == 4
    assert rep.lower_bound_value == 211 and rep.lower_bound_construction == "L4"
    rep = bound_report(13, 4, 3, 1)
    assert rep.bound("f(n,k,3,1)").value == 57


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "construct")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "clusterfree", "extremal", "f", "4", "2", "2", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "value 3" in proc.stdout
