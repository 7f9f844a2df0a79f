from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class Certificate:
    """Outcome of a batch of checks.

    Overall pass iff every check passed; a failing check carries a witness
    (an offending pair, triple, class, ...).
    """

    subject: str
    checks: list[Check] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, witness: Any = None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: Certificate, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))

    def render(self) -> str:
        lines = [f"subject: {self.subject}", f"result: {'PASS' if self.passed else 'FAIL'}"]
        for key, val in self.counts.items():
            lines.append(f"count.{key}: {val}")
        for c in self.checks:
            line = f"check.{c.name}: {'pass' if c.passed else 'FAIL'}"
            if not c.passed and c.witness is not None:
                line += f" witness={c.witness}"
            lines.append(line)
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"

    def __bool__(self) -> bool:
        return self.passed
