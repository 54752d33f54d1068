"""Structured verification reports.

Every verifier returns a :class:`Report`: a list of named checks, each with a
status and, on failure, the basis witness and both sides of the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .scalars import LaurentFrac, scalar_str

PASS, FAIL, ERROR, SKIPPED = "pass", "fail", "error", "skipped"


def render(value: Any) -> Any:
    """Turn scalars, sparse vectors and tuples into JSON-friendly values."""
    if isinstance(value, (LaurentFrac, Fraction)) or (isinstance(value, int) and not isinstance(value, bool)):
        return scalar_str(value)
    if isinstance(value, dict):
        return {str(render(k)) if not isinstance(k, str) else k: render(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    return value


@dataclass
class Check:
    id: str
    status: str
    degree: int | None = None
    witness: Any = None
    lhs: Any = None
    rhs: Any = None
    detail: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"id": self.id, "status": self.status}
        for key in ("degree", "witness", "lhs", "rhs", "detail"):
            val = getattr(self, key)
            if val is not None:
                out[key] = render(val)
        return out


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def passed(self, id: str, degree: int | None = None, detail: str | None = None) -> Check:
        c = Check(id, PASS, degree=degree, detail=detail)
        self.checks.append(c)
        return c

    def failed(self, id: str, witness=None, lhs=None, rhs=None, degree: int | None = None, detail: str | None = None) -> Check:
        c = Check(id, FAIL, degree=degree, witness=witness, lhs=lhs, rhs=rhs, detail=detail)
        self.checks.append(c)
        return c

    def record(self, id: str, witness=None, lhs=None, rhs=None, degree: int | None = None) -> Check:
        """Append a pass if ``witness`` is None, otherwise a failure."""
        if witness is None:
            return self.passed(id, degree=degree)
        return self.failed(id, witness=witness, lhs=lhs, rhs=rhs, degree=degree)

    def extend(self, other: Report | Iterable[Check], prefix: str = "") -> Report:
        checks = other.checks if isinstance(other, Report) else other
        for c in checks:
            self.checks.append(Check(prefix + c.id, c.status, c.degree, c.witness, c.lhs, c.rhs, c.detail))
        return self

    def get(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}
        if self.data:
            out["data"] = render(self.data)
        return out

    def __str__(self) -> str:
        lines = [f"{self.name}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            line = f"  [{c.status}] {c.id}"
            if not c.ok and c.witness is not None:
                line += f"  witness={render(c.witness)} lhs={render(c.lhs)} rhs={render(c.rhs)}"
            lines.append(line)
        return "\n".join(lines)


class VerificationError(ValueError):
    """A structure failed validation; carries the report."""

    def __init__(self, report: Report):
        self.report = report
        first = report.failures()[0] if report.failures() else None
        msg = f"{report.name} failed"
        if first is not None:
            msg += f" at {first.id} (witness {render(first.witness)})"
        super().__init__(msg)
