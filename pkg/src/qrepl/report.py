"""Check results in a renderable, exact form.

Values stay exact rationals in memory; the structured rendering turns them
into decimal strings (``"-3"``, ``"7/2"``) so output is bit-stable and never
passes through floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

MAX_HUMAN_VIOLATIONS = 10


def scalar_str(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


@dataclass(frozen=True)
class Violation:
    """One failed coefficient comparison: where, and the two sides."""

    indices: dict
    lhs: object
    rhs: object

    def to_dict(self) -> dict:
        return {
            "indices": dict(self.indices),
            "lhs": scalar_str(self.lhs),
            "rhs": scalar_str(self.rhs),
        }


@dataclass
class Report:
    """Outcome of one verification run."""

    check_id: str
    parameters: dict
    violations: list
    level: int | None = None
    info: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        doc = {
            "check_id": self.check_id,
            "level": self.level,
            "parameters": dict(self.parameters),
            "status": self.status,
            "violations": [v.to_dict() for v in self.violations],
        }
        if self.info:
            doc["info"] = dict(self.info)
        return doc

    def render_structured(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def render_human(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        head = f"check {self.check_id}"
        if self.level is not None:
            head += f" level={self.level}"
        if params:
            head += f" {params}"
        lines = [f"{head}: {self.status.upper()}"]
        if self.violations:
            shown = min(len(self.violations), MAX_HUMAN_VIOLATIONS)
            lines.append(f"{len(self.violations)} violation(s); showing {shown}")
            for v in self.violations[:MAX_HUMAN_VIOLATIONS]:
                where = ", ".join(f"{k}={w}" for k, w in v.indices.items())
                lines.append(
                    f"  at {where}: lhs={scalar_str(v.lhs)} rhs={scalar_str(v.rhs)}"
                )
        for key, note in sorted(self.info.items()):
            lines.append(f"note {key}: {note}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return self.render_structured()
        if fmt == "human":
            return self.render_human()
        raise ValueError(f"unknown output format {fmt!r}")
