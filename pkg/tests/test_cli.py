from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from nlsa import GF, act3, paper_bc
from nlsa import io as nio
from nlsa.cli import run_command


def run(argv):
    buf = io.StringIO()
    code, report = run_command(argv, buf)
    return code, report, buf.getvalue()


@pytest.fixture
def bc_file(tmp_path):
    path = tmp_path / "paper_bc4.nsla"
    nio.save_algebra(paper_bc(4, GF(3)), path)
    return str(path)


def test_validate_ok(bc_file):
    code, report, _ = run(["validate", bc_file])
    assert code == 0 and report["validation"]["ok"]


def test_catalog_then_validate(tmp_path):
    out = str(tmp_path / "act3.nsla")
    code, _, _ = run(["catalog", "act3", "--field", "F3", "--out", out])
    assert code == 0
    assert run(["validate", out])[0] == 0


def test_corrupted_file_reports_witness(tmp_path):
    doc = nio.algebra_to_dict(paper_bc(4, GF(3)))
    doc["brackets"].append({"args": ["c", "b", "b", "b"], "value": {"c": "1"}})
    path = tmp_path / "corrupted.nsla"
    path.write_text(json.dumps(doc))
    code, report, _ = run(["--report", "machine", "validate", str(path)])
    assert code == 1
    assert any(w["kind"] == "grading" for w in report["validation"]["witnesses"])


def test_input_errors_exit_two(tmp_path):
    assert run(["validate", str(tmp_path / "missing.nsla")])[0] == 2
    assert run(["catalog", "paper_bc", "--n", "3", "--out", str(tmp_path / "x.nsla")])[0] == 2
    assert run(["enumerate", "--dim-even", "3", "--dim-odd", "3", "--arity", "3", "--prime", "5",
                "--out", str(tmp_path), "--budget", "10"])[0] == 2
    assert run(["no-such-command"])[0] == 2


def test_conformance_exit_codes(tmp_path, bc_file):
    assert run(["conformance", bc_file])[0] == 0
    path = tmp_path / "act3.nsla"
    nio.save_algebra(act3(GF(3)), path)
    code, report, _ = run(["--report", "machine", "conformance", str(path)])
    # act3 is S* but not nilpotent, so the characterization record fails
    assert code == 1
    statuses = {r["id"]: r["status"] for r in report["algebras"][0]["records"]}
    assert statuses["s_star_iff_nilpotent"] == "fail"
    assert statuses["nilpotent_radicals"] == "not_applicable"


def test_analyze_report(bc_file):
    code, report, _ = run(["analyze", bc_file, "--report", "machine"])
    assert code == 0
    assert report["nilpotency_class"] == 2
    assert report["power_series"]["dims"] == [2, 1, 0]


def test_machine_reports_are_deterministic_and_round_trip(bc_file):
    for cmd in (["analyze", bc_file], ["lattice", bc_file], ["conformance", bc_file]):
        _, report, one = run(["--report", "machine"] + cmd)
        _, _, two = run(["--report", "machine"] + cmd)
        assert one == two
        assert json.loads(one) == report


def test_enumerate_and_corpus_conformance(tmp_path):
    out = tmp_path / "corpus"
    code, report, _ = run(["enumerate", "--dim-even", "1", "--dim-odd", "1", "--arity", "4",
                           "--prime", "2", "--out", str(out)])
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == [f"alg_{i:08d}.nsla" for i in (0, 1, 2, 8, 10)]
    code, _, _ = run(["conformance", "--corpus", str(out)])
    assert code == 1


def test_text_report(bc_file):
    code, _, text = run(["analyze", bc_file])
    assert code == 0 and "class" in text.lower()


def test_console_entry_point(bc_file):
    proc = subprocess.run([sys.executable, "-m", "nlsa", "validate", bc_file], capture_output=True, text=True)
    assert proc.returncode == 0
