"""Violation records shared by every law checker."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    """One failed law instance: the axiom tag, the witness, and both sides."""

    axiom: str
    witness: dict[str, str]
    lhs: str
    rhs: str

    def format(self) -> str:
        parts = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"[{self.axiom}] {parts}\n    lhs = {self.lhs}\n    rhs = {self.rhs}"

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": dict(self.witness), "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class Report:
    """Outcome of one check suite: instance count plus collected violations."""

    name: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    max_violations: int = 25
    failed: int = 0
    _axioms: set = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, condition: bool, axiom: str, witness: dict[str, str], lhs: str, rhs: str) -> bool:
        self.checked += 1
        if not condition:
            self.failed += 1
            self._axioms.add(axiom)
            if len(self.violations) < self.max_violations:
                self.violations.append(Violation(axiom, witness, lhs, rhs))
        return condition

    def passed(self) -> None:
        self.checked += 1

    def fail(self, axiom: str, witness: dict[str, str], lhs: str, rhs: str) -> None:
        self.checked += 1
        self.failed += 1
        self._axioms.add(axiom)
        if len(self.violations) < self.max_violations:
            self.violations.append(Violation(axiom, witness, lhs, rhs))

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failed += other.failed
        self._axioms |= other._axioms
        self.violations.extend(other.violations)
        return self

    def axioms_violated(self) -> set[str]:
        return set(self._axioms)

    def format(self) -> str:
        head = f"{self.name}: {'ok' if self.ok else 'FAILED'} ({self.checked} instances)"
        if self.ok:
            return head
        body = "\n".join(v.format() for v in self.violations)
        if self.failed > len(self.violations):
            body += f"\n... and {self.failed - len(self.violations)} further violations"
        return head + "\n" + body

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }
