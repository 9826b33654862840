from __future__ import annotations

import argparse
import io
import subprocess
import sys

import pytest

from qid.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, _emit, main, parse_rs
from qid.verify import PASS, SKIPPED, IdentityReport, RunDocument, all_ids


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_list_is_sorted_and_complete():
    code, text = run("list")
    assert code == EXIT_OK
    ids = [line.split()[0] for line in text.splitlines()]
    assert ids == sorted(ids) == all_ids()
    gf = next(line for line in text.splitlines() if line.startswith("gf-main"))
    assert "series+points" in gf


def test_verify_smoke_passes():
    code, text = run("verify", "--id", "gf-main", "--order", "2")
    assert code == EXIT_OK
    assert text.rstrip().endswith("passed")


def test_verify_unknown_id(capsys):
    code, _ = run("verify", "--id", "nosuch")
    assert code == EXIT_USAGE
    assert "UnknownIdentity" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ("verify",),
        ("verify", "--id", "gf-main", "--order", "0"),
        ("verify", "--id", "gf-main", "--rs", "2..1"),
        ("verify", "--id", "gf-main", "--alpha", "half"),
        ("verify", "--id", "gf-main", "--param", "N"),
        ("expand", "--family", "nosuch", "--n", "1"),
        ("expand", "--family", "hahn", "--n", "-1"),
        ("eval", "--id", "qpoch-inversion"),
        ("bogus",),
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_perturbed_run_fails():
    code, text = run("verify", "--id", "chu-vandermonde", "--n-max", "3", "--perturb")
    assert code == EXIT_FAIL
    assert "first mismatch" in text


def test_unknown_id_in_suite_list_is_a_usage_error():
    assert run("verify", "--suite", "chu-vandermonde,nosuch")[0] == EXIT_USAGE


def test_skipped_report_exits_one():
    args = argparse.Namespace(report=None, format="human")
    doc = RunDocument("0", 42, {}, [IdentityReport("x", {}, "series", SKIPPED, reason="why")])
    out = io.StringIO()
    assert _emit(args, doc, out) == EXIT_FAIL
    assert "reason: why" in out.getvalue()


def test_report_written_and_round_trips(tmp_path):
    path = tmp_path / "out.json"
    code, text = run(
        "verify", "--id", "gf-main", "--order", "3", "--rs", "0,0", "--alpha", "sym",
        "--report", str(path), "--format", "machine",
    )
    assert code == EXIT_OK
    doc = RunDocument.loads(path.read_text())
    assert path.read_text() == text
    assert RunDocument.loads(doc.dumps()) == doc
    assert {r.mode for r in doc.reports} == {"series", "points"}
    assert all(r.status == PASS for r in doc.reports)
    assert all(r.elapsed_ms is None for r in doc.reports)


def test_timings_flag_records_elapsed():
    code, text = run("verify", "--id", "chu-vandermonde", "--n-max", "2", "--format", "machine", "--timings")
    assert code == EXIT_OK
    assert RunDocument.loads(text).reports[0].elapsed_ms is not None


def test_mode_and_param_flags():
    code, text = run(
        "verify", "--id", "gf-main", "--mode", "points", "--param", "N=3", "--param", "alpha=int:1",
        "--points", "3", "--format", "machine",
    )
    assert code == EXIT_OK
    (report,) = RunDocument.loads(text).reports
    assert report.mode == "points" and report.params["alpha"] == "int:1"


def test_eval_runs_point_mode():
    code, text = run("eval", "--id", "gf-cauchy-2phi1", "--order", "3", "--points", "5", "--format", "machine")
    assert code == EXIT_OK
    assert {r.mode for r in RunDocument.loads(text).reports} == {"points"}


def test_expand_outputs():
    code, text = run("expand", "--family", "hahn", "--n", "1")
    assert code == EXIT_OK
    header, body = text.splitlines()
    assert header.startswith("hahn n=1")
    assert body == "(-1)/1 * x^1*s^1 + (1)/1 * x^1 + (1)/1"
    assert run("expand", "--family", "cauchy", "--n", "0")[1].splitlines()[1] == "(1)/1"
    code, text = run("expand", "--family", "ltilde", "--n", "1", "--rs", "0,0", "--alpha", "sym")
    assert code == EXIT_OK and "z^1" in text and "A^1" in text


def test_parse_rs():
    assert parse_rs("0,1") == ((0, 1),)
    assert len(parse_rs("-1..1")) == 9


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qid", "list"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "gf-main" in proc.stdout
