from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one verification.  ``counterexample`` names the first failure."""

    name: str
    passed: bool = True
    counterexample: str | None = None
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def fail(self, why: str):
        if self.passed:
            self.counterexample = why
        self.passed = False

    def note(self, line: str):
        self.lines.append(line)

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" -- {self.counterexample}" if self.counterexample else ""
        return f"{status} {self.name}{tail}"
