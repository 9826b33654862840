"""Verification reports and their JSON document form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "Pass"
FAIL = "Fail"
SKIPPED = "Skipped"


@dataclass
class Mismatch:
    check: str
    exponents: list[int]
    diff_rendered: str
    point: dict[str, str] | None = None

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "exponents": list(self.exponents),
            "diffRendered": self.diff_rendered,
            "point": self.point,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Mismatch:
        return cls(d["check"], list(d["exponents"]), d["diffRendered"], d.get("point"))


@dataclass
class IdentityReport:
    id: str
    params: dict
    mode: str
    status: str
    truncation: int | None = None
    first_mismatch: Mismatch | None = None
    reason: str | None = None
    elapsed_ms: float | None = None
    points_tried: int | None = None
    checks: int = 0

    def __post_init__(self):
        if self.status == FAIL and self.first_mismatch is None:
            raise ValueError("a failing report must locate its first mismatch")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": dict(self.params),
            "mode": self.mode,
            "status": self.status,
            "truncation": self.truncation,
            "firstMismatch": self.first_mismatch.to_dict() if self.first_mismatch else None,
            "reason": self.reason,
            "elapsedMs": self.elapsed_ms,
            "pointsTried": self.points_tried,
            "checks": self.checks,
        }

    @classmethod
    def from_dict(cls, d: dict) -> IdentityReport:
        fm = d.get("firstMismatch")
        return cls(
            id=d["id"],
            params=dict(d["params"]),
            mode=d["mode"],
            status=d["status"],
            truncation=d.get("truncation"),
            first_mismatch=Mismatch.from_dict(fm) if fm else None,
            reason=d.get("reason"),
            elapsed_ms=d.get("elapsedMs"),
            points_tried=d.get("pointsTried"),
            checks=d.get("checks", 0),
        )

    def summary_line(self) -> str:
        head = f"{self.status:<7} {self.id} [{self.mode}] {params_key(self.params)}"
        if self.elapsed_ms is not None:
            head += f" ({self.elapsed_ms:.0f} ms)"
        return head


def params_key(params: dict) -> str:
    """Canonical, sortable text for a parameter dictionary."""
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


@dataclass
class RunDocument:
    engine_version: str
    seed: int
    config: dict
    reports: list[IdentityReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "engineVersion": self.engine_version,
            "seed": self.seed,
            "config": self.config,
            "reports": [r.to_dict() for r in self.reports],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> RunDocument:
        d = json.loads(text)
        return cls(
            engine_version=d["engineVersion"],
            seed=d["seed"],
            config=d["config"],
            reports=[IdentityReport.from_dict(r) for r in d["reports"]],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunDocument):
            return NotImplemented
        return self.to_dict() == other.to_dict()


__all__ = [
    "FAIL",
    "PASS",
    "SKIPPED",
    "IdentityReport",
    "Mismatch",
    "RunDocument",
    "params_key",
]
