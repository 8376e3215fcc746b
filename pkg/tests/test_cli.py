import json
import subprocess
import sys

from critatlas.cli import main

from conftest import STORE


def fields(out):
    line = out.strip().splitlines()[-1]
    return dict(kv.split("=", 1) for kv in line.split())


def test_selftest(capsys):
    assert main(["-q", "selftest"]) == 0
    f = fields(capsys.readouterr().out)
    assert f["status"] == "ok" and f["failures"] == "none"


def test_classc(capsys):
    assert main(["-q", "classc", "--n", "3", "--choices", "010"]) == 0
    f = fields(capsys.readouterr().out)
    assert (f["vertices"], f["is_class_c"], f["critical"]) == ("13", "1", "1")


def test_classc_large_skips_criticality(capsys):
    assert main(["-q", "classc", "--n", "9"]) == 0
    assert fields(capsys.readouterr().out)["critical"] == "-"


def test_bad_choices_is_usage_error(capsys):
    assert main(["-q", "classc", "--n", "2", "--choices", "012"]) == 2
    assert fields(capsys.readouterr().out)["status"] == "usage-error"


def test_missing_subcommand_is_usage_error(capsys):
    assert main([]) == 2
    assert "usage-error" in capsys.readouterr().out


def test_bad_thread_count(monkeypatch, capsys):
    monkeypatch.setenv("CRITATLAS_THREADS", "many")
    assert main(["-q", "selftest"]) == 2
    assert "CRITATLAS_THREADS" in capsys.readouterr().err


def test_disk_build_into_fresh_store(tmp_path, capsys):
    root = str(tmp_path / "st")
    assert main(["-q", "--root", root, "disk", "build", "--max", "10"]) == 0
    f = fields(capsys.readouterr().out)
    assert f["status"] == "ok"
    assert (tmp_path / "st" / "disk" / "K10.rotg").exists()
    assert main(["-q", "--root", root, "export", "disk/K10", "--format", "json",
                 "--out", str(tmp_path / "ex")]) == 0
    recs = json.loads((tmp_path / "ex" / "disk" / "K10.json").read_text())
    assert len(recs) == 6


def test_verify_without_catalogs_is_usage_error(tmp_path, capsys):
    assert main(["-q", "--root", str(tmp_path), "disk", "verify-crit16"]) == 2


def test_unknown_export_family(tmp_path, capsys):
    assert main(["-q", "--root", str(tmp_path), "export", "cyl/level9"]) == 2


def test_ctable_from_store(cylinder, tmp_path, capsys):
    out = tmp_path / "ctable.tsv"
    assert main(["-q", "--root", str(STORE), "ctable", "--out", str(out)]) == 0
    f = fields(capsys.readouterr().out)
    assert f["rows"] == "86"
    rows = out.read_text().splitlines()
    assert len(rows) == 87
    assert rows[0].split("\t")[:3] == ["level", "name", "l1"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "critatlas", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "selftest" in r.stdout
