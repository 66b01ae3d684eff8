from __future__ import annotations

import csv
import json
import subprocess
import sys

import pytest

from apollonia.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _csv_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.reader(lines))


def test_packing_depth_two(capsys, tmp_path):
    path = tmp_path / "p.csv"
    code, _, _ = run(capsys, "packing", "--base", "-1,2,2,3", "--depth", "2", "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert text.startswith("# config: ")
    rows = _csv_rows(text)
    assert rows[0] == ["word", "depth", "c1", "c2", "c3", "c4"]
    assert len(rows) - 1 == 13
    assert rows[1] == ["", "0", "-1", "2", "2", "3"] and rows[2] == ["1", "1", "15", "2", "2", "3"]


def test_cone_classify_example(capsys):
    code, out, err = run(capsys, "cone", "classify", "--s", "1,1,1,1")
    assert code == 0
    assert out.strip() == '{"label":"Interior","word":"","iterations":0}'
    assert err.startswith("# config: ")


def test_cone_classify_word(capsys):
    code, out, _ = run(capsys, "cone", "classify", "--s", "-1,3,3,3")
    assert json.loads(out) == {"label": "Interior", "word": "1", "iterations": 1}


def test_delta5_coeff_example(capsys):
    code, out, _ = run(capsys, "delta5", "coeff", "--n", "1", "--l", "1", "--m", "1")
    assert code == 0 and out.strip() == "1"


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--base", "-1,2,2,3", "--max-curv", "7")
    assert code == 0
    assert _csv_rows(out) == [["curvature", "count"], ["-1", "1"], ["2", "2"], ["3", "2"], ["6", "4"]]


def test_deltafit(capsys):
    code, out, _ = run(capsys, "deltafit", "--base", "-1,2,2,3", "--xmin", "100", "--xmax", "10000",
                       "--points", "5")
    doc = json.loads(out)
    assert code == 0 and 1.2 < doc["exponent"] < 1.4 and len(doc["samples"]) == 5
    assert doc["config"]["xmax"] == 10000.0


def test_zeta_and_lfun(capsys):
    code, out, _ = run(capsys, "zeta", "--base", "-1,2,2,3", "--s", "1,1,1,1", "--height-bound", "500")
    assert code == 0 and set(json.loads(out)) == {"value", "tail"}
    code, out, _ = run(capsys, "lfun", "--base", "-1,2,2,3", "--u", "2", "--max-curv", "1000")
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.99375434, abs=1e-8)


def test_theta(capsys):
    code, out, _ = run(capsys, "theta", "--variant", "00", "--z", "0", "--t", "1")
    assert code == 0 and json.loads(out)["value"]["re"] == pytest.approx(1.0864348112133082)


def test_delta5_verify_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "delta5", "verify", "--box-b", "20", "--box-nm", "5",
                       "--quotient-degree", "4", "--report", str(path))
    assert code == 0 and json.loads(out)["passed"]
    report = json.loads(path.read_text())
    assert report["config"]["box_b"] == 20 and report["coefficients"]


def test_render(capsys, tmp_path):
    path = tmp_path / "s.svg"
    code, _, _ = run(capsys, "render", "--depth", "1", "--format", "svg", "--projection", "1,1,1",
                     "--out", str(path))
    assert code == 0 and path.read_text().startswith("<svg")


@pytest.mark.parametrize("argv", [
    ["packing", "--base", "1,2,3", "--depth", "1"],            # malformed quadruple
    ["packing", "--base", "1,1,1,1", "--depth", "1"],          # defect != 0
    ["packing", "--base", "-1,2,2,3", "--depth", "1", "--bogus"],
    ["delta5", "coeff", "--n", "2", "--l", "1", "--m", "1"],
    ["cone", "classify", "--s", "0,0,0,0"],
    ["zeta", "--base", "-1,2,2,3", "--s", "-1,1,1,1", "--height-bound", "100"],
    ["render", "--depth", "1", "--format", "png"],
    ["render", "--depth", "1", "--projection", "0,0,0"],
    ["nonsense"],
])
def test_validation_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_internal_error_exit_1(capsys, monkeypatch):
    import apollonia.packing
    monkeypatch.setattr(apollonia.packing, "orbit_bfs", lambda *a, **k: 1 / 0)
    code, _, err = run(capsys, "packing", "--base", "-1,2,2,3", "--depth", "1")
    assert code == 1 and "internal error" in err


def test_deterministic_output(capsys):
    argv = ["packing", "--base", "-6,11,14,15", "--depth", "3"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "apollonia.cli", "cone", "classify", "--s", "1,1,1,1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["label"] == "Interior"


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "6,8")
    assert code == 0 and out.count("[PASS]") == 2
