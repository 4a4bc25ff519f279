"""Structured pass/fail records for verification checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

SCHEMA_VERSION = 1


@dataclass
class Check:
    name: str
    passed: bool
    worst_slack: float = math.inf
    witness_t: Optional[float] = None
    detail: str = ""

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "worst_slack": _json_number(self.worst_slack),
            "witness_t": _json_number(self.witness_t),
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    suite: str
    checks: List[Check] = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "environment": self.environment,
        }

    def summary_lines(self):
        return [f"[{c.status.upper()}] {self.suite}/{c.name}: worst_slack={c.worst_slack:.6g}"
                f" witness_t={c.witness_t} {c.detail}".rstrip() for c in self.checks]


def _json_number(v):
    # JSON has no inf/nan; unbounded slack is reported as null
    if v is None or not math.isfinite(v):
        return None
    return float(v)


class SlackTracker:
    """Accumulates the smallest slack (rhs - lhs) and where it occurred."""

    def __init__(self):
        self.worst = math.inf
        self.witness = None
        self.violations = 0
        self.errors = []

    def record(self, t, slack, ok):
        if slack < self.worst:
            self.worst, self.witness = slack, t
        if not ok:
            self.violations += 1

    def error(self, t, exc):
        self.errors.append((t, exc))

    def check(self, name, points):
        passed = self.violations == 0 and not self.errors
        detail = f"{points} points, {self.violations} violations"
        if self.errors:
            t, exc = self.errors[0]
            detail += f", {len(self.errors)} evaluation errors (first at t={t!r}: {exc})"
        return Check(name, passed, self.worst, self.witness, detail)
