"""
Pydantic schemas for check reports
Every validator and randomized law check returns a Report
"""
import json
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

from factn import __version__


# ============================================
# Check entries
# ============================================

class CheckResult(BaseModel):
    """One pass/fail entry"""
    model_config = ConfigDict(populate_by_name=True)

    name: str = Field(..., description="Check name, e.g. RTR2.beta_alpha_id")
    passed: bool = Field(..., alias="pass")
    index: Optional[int] = Field(None, description="Component or equation index")
    seed: Optional[int] = Field(None, description="Sample seed for randomized checks")
    inputs_digest: Optional[str] = Field(None, description="Digest of the checked inputs")
    detail: Optional[str] = None
    lhs: Optional[List[List[str]]] = Field(None, description="Left side on failure")
    rhs: Optional[List[List[str]]] = Field(None, description="Right side on failure")


def check(
    name: str,
    passed: bool,
    *,
    index: Optional[int] = None,
    detail: Optional[str] = None,
    lhs=None,
    rhs=None,
    seed: Optional[int] = None
) -> CheckResult:
    """Build a CheckResult; lhs/rhs matrices are printed only on failure"""
    return CheckResult(
        name=name,
        passed=bool(passed),
        index=index,
        seed=seed,
        detail=detail,
        lhs=None if passed or lhs is None else lhs.to_strings(),
        rhs=None if passed or rhs is None else rhs.to_strings(),
    )


# ============================================
# Reports
# ============================================

class Report(BaseModel):
    """Ordered list of checks with a computed summary"""
    model_config = ConfigDict(populate_by_name=True)

    tool: str = "factn"
    version: str = __version__
    seed: Optional[int] = None
    checks: List[CheckResult] = Field(default_factory=list)
    artifacts: Dict[str, Any] = Field(default_factory=dict)

    @computed_field
    @property
    def summary(self) -> Dict[str, int]:
        passed = sum(1 for c in self.checks if c.passed)
        return {"pass": passed, "fail": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def add(self, result: CheckResult) -> "Report":
        self.checks.append(result)
        return self

    def extend(self, results: Iterable[CheckResult]) -> "Report":
        self.checks.extend(results)
        return self

    def prefixed(self, prefix: str, **updates) -> List[CheckResult]:
        """Copies of the checks renamed to prefix.name"""
        return [
            c.model_copy(update={"name": f"{prefix}.{c.name}", **updates})
            for c in self.checks
        ]

    def describe_failure(self) -> str:
        failure = self.first_failure()
        if failure is None:
            return "all checks pass"
        where = f" at index {failure.index}" if failure.index is not None else ""
        detail = f": {failure.detail}" if failure.detail else ""
        return f"{failure.name} failed{where}{detail}"

    def to_json(self) -> str:
        """Canonical JSON: aliases, sorted keys, trailing newline"""
        payload = self.model_dump(by_alias=True, mode="json")
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
