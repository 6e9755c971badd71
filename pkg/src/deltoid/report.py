from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of an exact verification sweep. Failures are collected, not raised."""

    name: str
    checked: int = 0
    failures: list[tuple[Any, str]] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, key: Any, ok: bool, detail: str = "") -> None:
        self.checked += 1
        if not ok:
            self.failures.append((key, detail))

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failures.extend((f"{other.name}:{k}", d) for k, d in other.failures)
        return self

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.name}: {self.checked} checked, {len(self.failures)} failed"
        for key, detail in self.failures[:10]:
            line += f"\n    {key}: {detail}"
        if len(self.failures) > 10:
            line += f"\n    ... {len(self.failures) - 10} more"
        return line
