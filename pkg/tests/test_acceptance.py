"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion K: PASS|FAIL ...`` line.  Memo caches
are cleared before every timed run so one criterion cannot warm another.
"""

from __future__ import annotations

import importlib
import os
import pkgutil
import time

import pytest

import qid
from qid.verify import FAIL, PASS, RunDocument, SuiteConfig, all_ids, get, run_document, run_suite, verify

pytestmark = pytest.mark.slow


def clear_caches():
    for info in pkgutil.walk_packages(qid.__path__, "qid."):
        if info.name.endswith("__main__"):
            continue
        module = importlib.import_module(info.name)
        for value in list(vars(module).values()):
            if callable(getattr(value, "cache_clear", None)):
                value.cache_clear()


_config = None


@pytest.fixture(autouse=True)
def _keep_config(pytestconfig):
    global _config
    _config = pytestconfig


def report_line(number: int, ok: bool, detail: str):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    _config.acceptance_lines.append(line)
    reporter = _config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line("")
        reporter.write_line(line)


def timed_suite(ids, **kwargs):
    clear_caches()
    start = time.perf_counter()
    reports = run_suite(SuiteConfig(ids=tuple(ids), **kwargs))
    return reports, time.perf_counter() - start


def check_criterion(number, ids, budget_s, expect_modes=None, **kwargs):
    reports, elapsed = timed_suite(ids, **kwargs)
    bad = [r for r in reports if r.status != PASS]
    covered = {r.id for r in reports}
    modes_ok = True
    if expect_modes:
        modes_ok = all({r.mode for r in reports if r.id == i} >= set(m) for i, m in expect_modes.items())
    ok = not bad and covered == set(ids) and modes_ok and elapsed < budget_s
    report_line(number, ok, f"{len(reports)} tuples, {len(bad)} not passing, {elapsed:.1f}s (budget {budget_s}s)")
    assert not bad, [r.summary_line() for r in bad]
    assert covered == set(ids)
    assert modes_ok
    assert elapsed < budget_s
    return reports


def test_criterion_1_qpoch_inversion():
    reports = check_criterion(1, ["qpoch-inversion"], 1.0)
    assert reports[0].params == {"n_max": 12}


def test_criterion_2_qde_membership():
    reports = check_criterion(2, ["qde-membership"], 60.0)
    alphas = {r.params["alpha"] for r in reports}
    rs = {(r.params["r"], r.params["s"]) for r in reports}
    assert alphas == {"int:0", "int:1", "int:2", "int:3", "int:4", "sym"}
    assert rs == {(r, s) for r in range(-2, 3) for s in range(-2, 3)}
    assert {r.params["n_max"] for r in reports} == {6}


def test_criterion_3_gf_main_both_modes():
    reports = check_criterion(3, ["gf-main"], 120.0, expect_modes={"gf-main": ("series", "points")})
    assert {r.params["N"] for r in reports} == {8}
    assert len(reports) == 2 * 25 * 6


def test_criterion_4_rogers_main():
    reports = check_criterion(4, ["rogers-main"], 300.0)
    assert {r.params["alpha"] for r in reports} == {"int:0", "int:1", "int:2", "int:3", "sym"}
    assert {(r.params["r"], r.params["s"]) for r in reports} == {(r, s) for r in (-1, 0, 1) for s in (-1, 0, 1)}
    assert {r.params["N"] for r in reports} == {8}


def test_criterion_5_operator_lemmas():
    reports = check_criterion(5, ["toperator-lemma", "da-ratio", "leibniz"], 60.0)
    params = {r.id: r.params for r in reports}
    assert params["toperator-lemma"]["k_max"] == 4 and params["toperator-lemma"]["N"] == 8
    assert params["da-ratio"]["n_max"] == 4 and params["da-ratio"]["N"] == 8
    assert params["leibniz"]["pairs"] == 50


def test_criterion_6_mixed_and_bilinear():
    reports = check_criterion(6, ["mixed-main", "srivastava-agarwal", "chu-vandermonde"], 180.0)
    mixed = [r for r in reports if r.id == "mixed-main"]
    assert {r.params["alpha"] for r in mixed} >= {"int:0", "int:1", "int:2", "int:3", "sym"}
    assert all(r.params["N"] == 8 for r in mixed)
    assert next(r for r in reports if r.id == "chu-vandermonde").params["n_max"] == 10


def test_criterion_7_specialization_chain():
    check_criterion(7, ["gf-y0", "gf-Fn", "rogers-Fn", "mixed-Fn", "reductions"], 120.0)


def test_criterion_8_mutation_sensitivity():
    clear_caches()
    missed = []
    total = 0
    for identity_id in all_ids():
        desc = get(identity_id)
        for mode in desc.modes:
            total += 1
            report = verify(identity_id, None, mode, perturb=True, points=5)
            if report.status != FAIL or report.first_mismatch is None:
                missed.append((identity_id, mode, report.status))
    ok = not missed
    report_line(8, ok, f"{total - len(missed)}/{total} perturbed (identity, mode) pairs detected")
    assert ok, missed


@pytest.fixture(scope="module")
def full_runs():
    jobs = min(4, os.cpu_count() or 1)
    docs, walls = [], []
    for _ in range(2):
        clear_caches()
        start = time.perf_counter()
        docs.append(run_document(SuiteConfig(seed=42, jobs=jobs)).dumps())
        walls.append(time.perf_counter() - start)
    return docs, walls, jobs


def test_criterion_9_determinism(full_runs):
    docs, _, _ = full_runs
    ok = docs[0] == docs[1]
    report_line(9, ok, f"two seed-42 full-suite reports, {len(docs[0])} bytes each, identical={ok}")
    assert ok


def test_criterion_10_full_suite_budget(full_runs):
    docs, walls, jobs = full_runs
    reports = RunDocument.loads(docs[0]).reports
    bad = [r.summary_line() for r in reports if r.status != PASS]
    ok = not bad and max(walls) < 600
    report_line(
        10, ok, f"{len(reports)} reports, {len(bad)} not passing, wall {max(walls):.1f}s on {jobs} worker(s) (budget 600s)"
    )
    assert not bad, bad
    assert max(walls) < 600
