"""Run identity checks exactly or at random rational points and collect reports."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from flint import fmpq

from .. import __version__
from ..algebra.rings import PointRing, RatPoint
from ..algebra.series import GradedSeries
from ..errors import ExhaustedResamples, NotDivisible, ParamOutOfSchema, PoleAtPoint, QidError
from .identities import symbolic_ring
from .registry import POINTS, SERIES, Check, get
from .report import FAIL, PASS, SKIPPED, IdentityReport, Mismatch, RunDocument, params_key

DEFAULT_POINTS = 25
MAX_RESAMPLE_FACTOR = 8


@dataclass(frozen=True)
class SuiteConfig:
    """What to verify and how.  ``ids=None`` means every registered identity."""

    ids: tuple[str, ...] | None = None
    order: int = 8
    alphas: tuple[str, ...] | None = None
    rs: tuple[tuple[int, int], ...] | None = None
    n_max: int | None = None
    seed: int = 42
    jobs: int = 1
    points: int = DEFAULT_POINTS
    modes: tuple[str, ...] | None = None
    timings: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be at least 1")
        if self.rs is not None and not self.rs:
            raise ValueError("empty (r, s) range")
        if self.alphas is not None and not self.alphas:
            raise ValueError("empty alpha list")
        if self.points < 1:
            raise ValueError("need at least one point")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ids"] = list(self.ids) if self.ids is not None else "all"
        d["rs"] = [list(p) for p in self.rs] if self.rs is not None else None
        for key in ("alphas", "modes"):
            d[key] = list(d[key]) if d[key] is not None else None
        # parallelism and timing do not change the verdicts
        d.pop("jobs")
        d.pop("timings")
        return d


# -- perturbation (harness self-test) ------------------------------------------------------
def _perturb(checks: list[Check], ring) -> list[Check]:
    """Add one to a single RHS coefficient of the first check."""
    first = checks[0]
    rhs = first.rhs
    if isinstance(rhs, GradedSeries):
        exps = (1,) + (0,) * (len(rhs.grading) - 1) if rhs.order >= 1 else (0,) * len(rhs.grading)
        bump = GradedSeries(ring, rhs.grading, rhs.order, {exps: ring.one()})
        rhs = rhs + bump
    else:
        rhs = rhs + ring.one()
    return [Check(first.label, first.lhs, rhs)] + list(checks[1:])


def _diff_text(value) -> str:
    if hasattr(value, "render"):
        return value.render()
    return str(value)


def _compare(check: Check, min_order: int | None):
    """Return ``None`` on agreement, else ``(exponents, difference)``."""
    diff = check.lhs - check.rhs
    if isinstance(diff, GradedSeries):
        if min_order is not None and diff.order < min_order:
            raise QidError(f"check {check.label} is only known through order {diff.order} < {min_order}")
        first = diff.first_nonzero()
        if first is None:
            return None
        return list(first), diff.coeffs[first]
    if isinstance(diff, (Fraction, fmpq)):
        return None if diff == 0 else ([], diff)
    return None if diff.is_zero() else ([], diff)


def verify(
    identity_id: str,
    params: dict | None = None,
    mode: str | None = None,
    *,
    perturb: bool = False,
    points: int = DEFAULT_POINTS,
    seed: int = 42,
) -> IdentityReport:
    """Verify one identity at one parameter tuple.

    Raises :class:`UnknownIdentity` or :class:`ParamOutOfSchema`; every other
    outcome is a report.
    """
    desc = get(identity_id)
    resolved = desc.resolve(params)
    mode = mode or desc.modes[0]
    if mode not in desc.modes:
        raise ParamOutOfSchema(f"{identity_id} does not support {mode} mode")
    if mode == POINTS:
        return verify_at_points(identity_id, resolved, points, seed, perturb=perturb)
    start = time.perf_counter()
    ring = symbolic_ring(desc.laurent)
    checks = desc.build(resolved, ring)
    if perturb:
        checks = _perturb(checks, ring)
    truncation = desc.truncation(resolved)
    first = None
    for check in checks:
        found = _compare(check, truncation)
        if found is not None:
            exps, diff = found
            first = Mismatch(check.label, exps, _diff_text(diff))
            break
    return IdentityReport(
        id=identity_id,
        params=resolved,
        mode=SERIES,
        status=FAIL if first else PASS,
        truncation=truncation,
        first_mismatch=first,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        checks=len(checks),
    )


def verify_at_points(
    identity_id: str,
    params: dict | None = None,
    point_count: int = DEFAULT_POINTS,
    seed: int = 42,
    *,
    perturb: bool = False,
) -> IdentityReport:
    """Evaluate both sides exactly at ``point_count`` seeded random rational points.

    Points where some denominator vanishes are discarded and redrawn; after
    ``MAX_RESAMPLE_FACTOR * point_count`` draws the report is Skipped.
    """
    desc = get(identity_id)
    resolved = desc.resolve(params)
    if POINTS not in desc.modes:
        raise ParamOutOfSchema(f"{identity_id} has no point-evaluation mode")
    start = time.perf_counter()
    rng = random.Random(f"{seed}:{identity_id}:{params_key(resolved)}")
    truncation = desc.truncation(resolved)
    good = 0
    draws = 0
    first = None
    n_checks = 0
    reason = None
    while good < point_count:
        if draws >= MAX_RESAMPLE_FACTOR * point_count:
            reason = str(ExhaustedResamples(f"{draws} draws yielded only {good} pole-free points"))
            break
        draws += 1
        point = RatPoint.random(rng, desc.point_vars)
        ring = PointRing(point)
        try:
            checks = desc.build(resolved, ring)
            if perturb:
                checks = _perturb(checks, ring)
            found = None
            for check in checks:
                found = _compare(check, truncation)
                if found is not None:
                    exps, diff = found
                    found = Mismatch(check.label, exps, str(diff), point.render())
                    break
        except (PoleAtPoint, ZeroDivisionError, NotDivisible):
            continue
        good += 1
        n_checks = len(checks)
        if found is not None:
            first = found
            break
    if first is not None:
        status = FAIL
    elif reason is not None:
        status = SKIPPED
    else:
        status = PASS
    return IdentityReport(
        id=identity_id,
        params=resolved,
        mode=POINTS,
        status=status,
        truncation=truncation,
        first_mismatch=first,
        reason=reason,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        points_tried=good,
        checks=n_checks,
    )


# -- suites ------------------------------------------------------------------------------
def plan(config: SuiteConfig) -> list[tuple]:
    """Expand a config into ``(id, params, mode)`` tasks; unknown ids become ``(id, None, error)``."""
    from .registry import all_ids

    ids = sorted(set(config.ids)) if config.ids is not None else all_ids()
    tasks = []
    for identity_id in ids:
        try:
            desc = get(identity_id)
        except QidError as exc:
            tasks.append((identity_id, None, exc))
            continue
        modes = [m for m in desc.modes if config.modes is None or m in config.modes]
        for params in desc.grid(config):
            for mode in modes:
                tasks.append((identity_id, params, mode))
    return tasks


def _skipped(identity_id, params, mode, exc) -> IdentityReport:
    return IdentityReport(
        id=identity_id,
        params=params or {},
        mode=mode or "",
        status=SKIPPED,
        reason=f"{type(exc).__name__}: {exc}",
    )


def _run_task(task, points: int, seed: int) -> IdentityReport:
    identity_id, params, mode = task
    if isinstance(mode, Exception):
        return _skipped(identity_id, params, None, mode)
    try:
        return verify(identity_id, params, mode, points=points, seed=seed)
    except Exception as exc:  # a broken tuple must not abort the suite
        return _skipped(identity_id, params, mode, exc)


def _sort_key(report: IdentityReport):
    return (report.id, params_key(report.params), report.mode)


def run_suite(config: SuiteConfig) -> list[IdentityReport]:
    """Verify every task of ``config``; the result order is independent of scheduling."""
    tasks = plan(config)
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(_run_task, t, config.points, config.seed) for t in tasks]
            reports = [f.result() for f in futures]
    else:
        reports = [_run_task(t, config.points, config.seed) for t in tasks]
    if not config.timings:
        for r in reports:
            r.elapsed_ms = None
    return sorted(reports, key=_sort_key)


def run_document(config: SuiteConfig) -> RunDocument:
    return RunDocument(__version__, config.seed, config.to_dict(), run_suite(config))


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("QID_JOBS", "1")))
    except ValueError:
        return 1
