from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from cmotives.cli import main

from conftest import DATA


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_charpoly(capsys):
    code, out, _ = run(capsys, "charpoly", DATA / "carlitz.json")
    assert code == 0 and json.loads(out) == {"chi": "x - t", "mu": "x - t"}


def test_zeta(capsys):
    code, out, _ = run(capsys, "zeta", DATA / "carlitz.json")
    assert json.loads(out) == {"num": "1 - t*u", "den": "1 - u"}
    code, out, _ = run(capsys, "zeta", "--drop-h0", DATA / "carlitz.json")
    assert json.loads(out) == {"num": "1 - t*u", "den": "1"}


def test_isog_over_different_towers_is_a_usage_error(capsys):
    code, out, err = run(capsys, "isog", DATA / "carlitz.json", DATA / "carlitz_bc2.json")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "TowerMismatch"


def test_isog_yes_and_no(capsys):
    code, out, _ = run(capsys, "isog", DATA / "drinfeld.json", DATA / "drinfeld.json", "--seed", 3)
    doc = json.loads(out)
    assert doc["status"] == "Yes" and doc["seed"] == 3
    code, out, _ = run(capsys, "isog", DATA / "carlitz.json", DATA / "carlitz_twist.json")
    assert json.loads(out)["status"] == "No"


def test_domain_error_exit_code(capsys):
    code, out, err = run(capsys, "class", DATA / "unipotent.json")
    assert code == 1
    doc = json.loads(err)
    assert doc["error"] == "NotSemisimple" and doc["kind"] == "domain"


def test_missing_file_is_a_usage_error(capsys):
    code, _, err = run(capsys, "charpoly", DATA / "missing.json")
    assert code == 2


def test_bad_arguments_exit_with_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tate", str(DATA / "carlitz.json")])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "hom", DATA / "carlitz.json", DATA / "carlitz.json", "--bounds", "x")
    assert code == 2


def test_validate_endo_hom_class(capsys):
    _, out, _ = run(capsys, "validate", DATA / "carlitz.json")
    assert json.loads(out)["k"] == [1]
    _, out, _ = run(capsys, "endo", DATA / "drinfeld.json")
    assert json.loads(out)["dim_E"] == 2
    _, out, _ = run(capsys, "hom", DATA / "carlitz.json", DATA / "carlitz.json", "--bounds", "8,2")
    assert json.loads(out)["dimension"] == 1
    _, out, _ = run(capsys, "class", DATA / "drinfeld.json")
    assert json.loads(out)["slope_key"] == "t[0:1/2,1:1/2];infinity[-1/2:1]"


def test_tate_and_crystal(capsys):
    _, out, _ = run(capsys, "tate", DATA / "carlitz.json", "--place", "t - 1", "--precision", 4)
    doc = json.loads(out)
    assert doc["frob"] == [[["1", "-1", "1", "-1"]]] and doc["galois_check"]
    _, out, _ = run(capsys, "crystal", DATA / "carlitz.json", "--place", "t - 1", "--precision", 3)
    assert json.loads(out)["tau_red"][0][0]["coefficients"] == ["1", "1", "0"]


def test_output_is_byte_identical_across_runs(capsys):
    outs = {run(capsys, "endo", DATA / "drinfeld.json")[1] for _ in range(2)}
    assert len(outs) == 1
    assert next(iter(outs)).endswith("\n")


def test_catalog_commands(capsys, tmp_path):
    root = tmp_path / "cat"
    for name in ("carlitz", "carlitz_twist", "drinfeld", "unipotent"):
        code, out, _ = run(capsys, "catalog", "add", DATA / f"{name}.json", "--catalog", root)
        assert code == 0
    _, out, _ = run(capsys, "catalog", "buckets", "--catalog", root)
    buckets = json.loads(out)
    assert len(buckets) == 2
    _, out, _ = run(capsys, "catalog", "check", "--catalog", root)
    assert json.loads(out) == {"ok": True, "problems": [], "objects": 4}


def test_catalog_root_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CMOTIVES_CATALOG", str(tmp_path / "env"))
    run(capsys, "catalog", "add", DATA / "carlitz.json")
    assert (tmp_path / "env" / "index.json").exists()


def test_console_script_is_installed():
    exe = shutil.which("cmotives")
    if exe is None:
        pytest.skip("console script not on PATH")
    res = subprocess.run([exe, "charpoly", str(DATA / "carlitz.json")], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["chi"] == "x - t"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cmotives.cli", "zeta", str(DATA / "carlitz.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"num": "1 - t*u", "den": "1 - u"}
