from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of an exhaustive check: empty ``violations`` means it passed."""

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    max_witnesses: int = 20
    violation_count: int = 0

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def __bool__(self) -> bool:
        return self.ok

    def add(self, witness) -> None:
        self.violation_count += 1
        if len(self.violations) < self.max_witnesses:
            self.violations.append(witness)

    @property
    def witness(self):
        return self.violations[0] if self.violations else None

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.violation_count += other.violation_count
        room = self.max_witnesses - len(self.violations)
        self.violations.extend(other.violations[:max(room, 0)])
        return self

    def __repr__(self) -> str:
        status = "ok" if self.ok else f"{self.violation_count} violation(s), first {self.witness!r}"
        return f"CheckReport({self.name!r}, checked={self.checked}, {status})"
