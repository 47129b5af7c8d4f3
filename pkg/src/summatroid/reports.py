from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of one exhaustive check; ``violations`` carry serialized witnesses."""

    name: str
    ok: bool
    violations: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "ok": self.ok, "violations": self.violations, "details": self.details}

    def __bool__(self) -> bool:
        return self.ok
