"""Structured pass/fail reports for validation and verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        mark = "ok" if self.passed else "FAIL"
        return f"[{mark:>4}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class ValidationReport:
    """Ordered list of named checks; order is the order checks were run."""

    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.name, c.passed, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        lines = [str(c) for c in self.checks]
        verdict = "all checks pass" if self.ok else f"{len(self.failures)} check(s) failed"
        return "\n".join(lines + [verdict])

    def to_jsonable(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }
