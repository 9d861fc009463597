import io
import json
import subprocess
import sys

import pytest

from torsion_lab.cli import run_cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    report = json.loads(out.getvalue()) if out.getvalue() else None
    return code, report, err.getvalue()


def strip_timing(report):
    report = dict(report)
    report.pop("timing", None)
    return json.dumps(report, sort_keys=True)


def test_sphere_odd():
    code, report, err = run("sphere", "--dim", "3", "--radius", "1", "--rank", "1")
    assert code == 0
    assert report["torsion"]["exact"] == "2*pi^2"
    assert report["torsion"]["float"] == pytest.approx(19.739208802178716, rel=1e-14)
    assert report["status"] == "ok" and "2*pi^2" in err


def test_sphere_even():
    code, report, _ = run("sphere", "--dim", "2", "--radius", "5", "--rank", "4")
    assert code == 0 and report["torsion"]["exact"] == "1"


def test_sphere_verbose_hemispheric():
    code, report, _ = run("sphere", "--dim", "3", "--radius", "3/2", "--model", "hemispheric", "--verbose")
    assert code == 0
    assert [row["degree"] for row in report["per_degree"]] == [0, 1, 2, 3]
    assert report["input"]["radius"] == "3/2"


def test_product():
    code, report, _ = run("product", "--dims", "2", "1", "--radii", "1", "1")
    assert code == 0 and report["torsion"]["exact"] == "4*pi^2"


def test_wengyou():
    code, report, _ = run("wengyou", "--k", "2", "--radius", "2")
    assert code == 0
    assert report["torsion"]["exact"] == report["volume"]["exact"] == "32*pi^3"


def test_volume_with_quadrature():
    code, report, _ = run("volume", "--dim", "5", "--quadrature", "1024")
    assert code == 0
    assert report["volume"]["exact"] == "1*pi^3"
    assert report["quadrature"]["relative_error"] <= 1e-9


def test_export_and_torsion(tmp_path):
    cpx, bas = tmp_path / "c.json", tmp_path / "b.json"
    code, _, _ = run("export", "--dim", "5", "--rank", "2", "--radius", "2/3",
                     "--model", "hemispheric", "--complex-out", str(cpx), "--basis-out", str(bas))
    assert code == 0
    code, direct, _ = run("sphere", "--dim", "5", "--rank", "2", "--radius", "2/3", "--model", "hemispheric")
    code2, from_file, _ = run("torsion", "--complex", str(cpx), "--basis", str(bas))
    assert code == code2 == 0
    assert from_file["torsion"]["exact"] == direct["torsion"]["exact"]
    code3, approx, _ = run("torsion", "--complex", str(cpx), "--basis", str(bas), "--float", "--tol", "1e-12")
    assert code3 == 0 and approx["torsion"]["exact"] is None
    assert approx["torsion"]["float"] == pytest.approx(direct["torsion"]["float"], rel=1e-9)


def test_report_determinism():
    a = run("sphere", "--dim", "7", "--rank", "3", "--radius", "5/7", "--verbose")[1]
    b = run("sphere", "--dim", "7", "--rank", "3", "--radius", "5/7", "--verbose")[1]
    assert strip_timing(a) == strip_timing(b)


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "torsion-lab/1", "degrees": [1, 1, 1],
                               "boundaries": [[[1]], [[1]]]}))
    code, report, err = run("torsion", "--complex", str(bad))
    assert code == 1 and report["status"] == "input-error" and "dd=0" in report["message"]
    assert run("torsion", "--complex", str(tmp_path / "missing.json"))[0] == 1
    assert run("sphere", "--dim", "0")[0] == 1
    assert run("sphere", "--dim", "2", "--radius", "-1")[0] == 1
    assert run("nonsense")[0] == 1


def test_missing_basis_for_cyclic_complex(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"schema": "torsion-lab/1", "degrees": [1], "boundaries": []}))
    code, report, _ = run("torsion", "--complex", str(f))
    assert code == 1 and "count" in report["message"]


def test_selfcheck_single_suite():
    code, report, err = run("selfcheck", "--suite", "spot-values", "--suite", "weng-you")
    assert code == 0 and report["status"] == "ok"
    assert [s["name"] for s in report["suites"]] == ["spot-values", "weng-you"]
    assert "PASS spot-values" in err


def test_selfcheck_failure_exit_code(monkeypatch):
    from torsion_lab import selfcheck

    def broken(rng):
        selfcheck._require(False, "deliberately broken")

    monkeypatch.setitem(selfcheck.SUITES, "spot-values", broken)
    code, report, _ = run("selfcheck", "--suite", "spot-values")
    assert code == 3 and report["status"] == "failed"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torsion_lab", "sphere", "--dim", "1", "--rank", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["torsion"]["exact"] == "4*pi^2"
