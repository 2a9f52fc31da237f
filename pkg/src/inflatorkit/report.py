"""Plain report containers shared by the harnesses and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class Check:
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    def to_json(self):
        d = {"name": self.name, "status": self.status}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, **detail: Any) -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, detail))
        return ok

    def note(self, name: str, status: str, **detail: Any):
        self.checks.append(Check(name, status, detail))

    @property
    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def count(self, status):
        return sum(1 for c in self.checks if c.status == status)

    def extend(self, other: "Report", prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))

    def to_json(self):
        return {
            "name": self.name,
            "status": PASS if self.passed else FAIL,
            "meta": self.meta,
            "counts": {s: self.count(s) for s in (PASS, FAIL, INCONCLUSIVE)},
            "checks": [c.to_json() for c in self.checks],
        }
