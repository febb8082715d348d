"""core/report.py — Reporte de validación compartido por todos los chequeos"""
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Report:
    name: str
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    witness: Optional[dict] = None
    checked: int = 0          # instancias cuantificadas
    skipped: int = 0          # instancias fuera de truncación

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, message: str, witness: Optional[dict] = None) -> None:
        self.violations.append(message)
        if witness is not None and self.witness is None:
            self.witness = witness

    def note(self, message: str) -> None:
        self.notes.append(message)

    def merge(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        self.checked += other.checked
        self.skipped += other.skipped
        if self.witness is None:
            self.witness = other.witness
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "violations": list(self.violations),
            "notes": list(self.notes),
            "witness": self.witness,
            "checked": self.checked,
            "skipped": self.skipped,
        }

