"""Identity registry, exact and point-evaluation verification, reports."""

from .engine import SuiteConfig, run_document, run_suite, verify, verify_at_points
from .registry import POINTS, SERIES, all_ids, get
from .report import FAIL, PASS, SKIPPED, IdentityReport, Mismatch, RunDocument

__all__ = [
    "FAIL",
    "PASS",
    "POINTS",
    "SERIES",
    "SKIPPED",
    "IdentityReport",
    "Mismatch",
    "RunDocument",
    "SuiteConfig",
    "all_ids",
    "get",
    "run_document",
    "run_suite",
    "verify",
    "verify_at_points",
]
