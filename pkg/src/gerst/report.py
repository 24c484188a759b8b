"""Pass/fail record shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_KEPT = 20


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed

    def check(self, ok, message):
        self.checked += 1
        if not ok:
            if len(self.failures) < MAX_KEPT:
                self.failures.append(message() if callable(message) else message)
            else:
                self.failures.append("...")
                self.failures = self.failures[:MAX_KEPT + 1]
        return ok

    def merge(self, other):
        self.checked += other.checked
        self.failures.extend(f"{other.name}: {f}" for f in other.failures)
        self.notes.extend(other.notes)
        return self

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name} ({self.checked} checks)"
        if self.failures:
            line += "\n" + "\n".join(f"    {f}" for f in self.failures[:5])
        return line

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
            "notes": list(self.notes),
        }
