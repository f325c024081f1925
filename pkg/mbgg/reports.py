"""
Report models shared by validators, verifiers and the CLI.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class ReportStatus(str, Enum):
    """Overall outcome of a check"""
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


class CheckOutcome(BaseModel):
    """One named check inside a report"""
    name: str
    passed: bool
    detail: str = ""
    informational: bool = False  # never flips the report status


class Report(BaseModel):
    """A titled list of checks with counters"""
    title: str
    checks: List[CheckOutcome] = Field(default_factory=list)
    counters: Dict[str, int] = Field(default_factory=dict)
    inconclusive: bool = False
    note: Optional[str] = None

    def add(self, name: str, passed: bool, detail: str = "", informational: bool = False) -> CheckOutcome:
        outcome = CheckOutcome(name=name, passed=passed, detail=detail, informational=informational)
        self.checks.append(outcome)
        return outcome

    def bump(self, counter: str, amount: int = 1) -> None:
        self.counters[counter] = self.counters.get(counter, 0) + amount

    def extend(self, other: "Report", prefix: str = "") -> None:
        """Merge another report's checks and counters into this one"""
        for check in other.checks:
            self.checks.append(check.model_copy(update={'name': prefix + check.name}))
        for key, value in other.counters.items():
            self.bump(key, value)
        self.inconclusive = self.inconclusive or other.inconclusive

    @property
    def failures(self) -> List[CheckOutcome]:
        return [c for c in self.checks if not c.passed and not c.informational]

    @property
    def passed(self) -> bool:
        return not self.failures and not self.inconclusive

    @property
    def status(self) -> ReportStatus:
        if self.failures:
            return ReportStatus.FAIL
        if self.inconclusive:
            return ReportStatus.INCONCLUSIVE
        return ReportStatus.PASS

    def failed(self, name: str) -> bool:
        """True if any failing check's name starts with ``name``"""
        return any(c.name.startswith(name) for c in self.failures)

    def render_text(self) -> str:
        lines = [self.status.value, f"# {self.title}"]
        for check in self.checks:
            mark = "ok" if check.passed else ("info" if check.informational else "FAIL")
            line = f"[{mark}] {check.name}"
            if check.detail:
                line += f": {check.detail}"
            lines.append(line)
        for key in sorted(self.counters):
            lines.append(f"{key}={self.counters[key]}")
        if self.note:
            lines.append(self.note)
        return "\n".join(lines)
