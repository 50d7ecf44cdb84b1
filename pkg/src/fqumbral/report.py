"""Pass/fail records produced by the identity checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_NOT_MET = "hypothesis_not_met"


@dataclass
class CheckReport:
    name: str
    status: str = PASS
    detail: str = ""
    counterexample: Optional[Any] = None
    children: List["CheckReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def fail(self, detail: str, counterexample=None) -> "CheckReport":
        self.status = FAIL
        self.detail = detail
        self.counterexample = counterexample
        return self

    def first_failure(self) -> Optional["CheckReport"]:
        """Deepest first failing check (hypothesis_not_met is not a failure)."""
        if self.status != FAIL:
            return None
        for ch in self.children:
            f = ch.first_failure()
            if f is not None:
                return f
        return self

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample is not None:
            out["counterexample"] = _jsonable(self.counterexample)
        if self.children:
            out["checks"] = [c.to_json() for c in self.children]
        return out

    def lines(self, indent: int = 0) -> List[str]:
        pad = "  " * indent
        s = f"{pad}[{self.status.upper()}] {self.name}"
        if self.detail:
            s += f" -- {self.detail}"
        out = [s]
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out


def combine(name: str, children: List[CheckReport]) -> CheckReport:
    """Fails if any child fails; hypothesis_not_met only if every child is."""
    rep = CheckReport(name, children=list(children))
    statuses = {c.status for c in children}
    if FAIL in statuses:
        rep.status = FAIL
    elif statuses == {HYPOTHESIS_NOT_MET}:
        rep.status = HYPOTHESIS_NOT_MET
    return rep


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    return str(obj)
