from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one exhaustive or randomized check."""

    name: str
    passed: bool
    checked: int = 0
    counterexamples: list[str] = field(default_factory=list)
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}  ({self.checked} cases)"
        if self.detail:
            text += f"  {self.detail}"
        if self.counterexamples:
            text += f"  e.g. {self.counterexamples[0]}"
        return text

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexamples": list(self.counterexamples),
            "detail": self.detail,
        }


def combine(name: str, reports: list[CheckReport]) -> CheckReport:
    failed = [r for r in reports if not r.passed]
    examples = [f"{r.name}: {c}" for r in failed for c in r.counterexamples[:3]]
    return CheckReport(
        name=name,
        passed=not failed,
        checked=sum(r.checked for r in reports),
        counterexamples=examples,
        detail="; ".join(f"{r.name} failed" for r in failed),
    )
