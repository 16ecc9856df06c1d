"""Machine-checkable verification records.

A certificate is an ordered list of named checks, each carrying the algebraic
property it tests, the measured residual (or value), and the threshold it was
held to.  Residuals are max-norms over all checked instances, never averages.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class Check:
    name: str
    property: str  # the algebraic identity or invariant being tested
    value: float
    threshold: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "property": self.property,
            "value": self.value,
            "threshold": self.threshold,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(d["name"], d["property"], d["value"], d["threshold"], d["passed"])


@dataclass
class Certificate:
    subject: str
    tolerance: float
    seed: int = 0
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, prop: str, value: float, threshold: float | None = None) -> Check:
        """Record a residual check: passes iff value <= threshold."""
        thr = self.tolerance if threshold is None else threshold
        check = Check(name, prop, float(value), float(thr), bool(value <= thr))
        self.checks.append(check)
        return check

    def add_flag(self, name: str, prop: str, ok: bool, value: float = 0.0) -> Check:
        """Record a boolean check; ``value`` is an optional measured quantity."""
        check = Check(name, prop, float(value), float("nan"), bool(ok))
        self.checks.append(check)
        return check

    def merge(self, other: "Certificate", prefix: str = "") -> None:
        for c in other.checks:
            name = f"{prefix}{c.name}" if prefix else c.name
            self.checks.append(Check(name, c.property, c.value, c.threshold, c.passed))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def worst(self) -> Check | None:
        failing = [c for c in self.checks if not c.passed]
        if failing:
            return max(failing, key=lambda c: c.value)
        return max(self.checks, key=lambda c: c.value) if self.checks else None

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "subject": self.subject,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        cert = cls(d["subject"], d["tolerance"], d.get("seed", 0))
        cert.checks = [Check.from_dict(c) for c in d["checks"]]
        return cert

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"certificate: {self.subject}", f"tolerance: {self.tolerance:g}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            thr = "" if c.threshold != c.threshold else f" (<= {c.threshold:g})"
            lines.append(f"  [{status}] {c.name}: {c.value:.3e}{thr}  -- {c.property}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]
