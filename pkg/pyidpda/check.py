"""Outcome of a single verification check."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional


class CheckStatus(Enum):
    """Verification check status."""

    PASS = "PASS"
    FAIL = "FAIL"
    BUDGET = "BUDGET"

    @classmethod
    def from_value(cls, value: str) -> 'CheckStatus':
        return cls(value)


@dataclass(frozen=True)
class CheckResult:
    """A named check with its verdict; failures carry expected and observed values."""

    id: str
    status: CheckStatus
    expected: Optional[str] = None
    observed: Optional[str] = None
    runtime: float = 0.0
    limit: Optional[int] = None

    def __post_init__(self) -> None:
        if self.status is CheckStatus.FAIL and (self.expected is None or self.observed is None):
            raise ValueError(f"failed check {self.id} needs expected and observed values")

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    @classmethod
    def compare(cls, check_id: str, expected: object, observed: object, runtime: float = 0.0) -> 'CheckResult':
        """Pass when observed equals expected, fail otherwise."""
        if expected == observed:
            return cls(check_id, CheckStatus.PASS, str(expected), str(observed), runtime)
        return cls(check_id, CheckStatus.FAIL, str(expected), str(observed), runtime)

    @classmethod
    def budget(cls, check_id: str, limit: int, runtime: float = 0.0) -> 'CheckResult':
        return cls(check_id, CheckStatus.BUDGET, runtime=runtime, limit=limit)
