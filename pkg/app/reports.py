"""Outcome record shared by every check operation."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

logger = logging.getLogger(__name__)


class CheckStatus(str, Enum):
    PASSED = "pass"
    FAILED = "fail"


@dataclass
class CheckReport:
    check: str
    params: dict[str, Any] = field(default_factory=dict)
    status: CheckStatus = CheckStatus.PASSED
    cases: int = 0
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASSED

    def record(self, label: str, holds: bool) -> bool:
        """Count one case; the first failing case becomes the counterexample."""
        self.cases += 1
        if not holds:
            if self.counterexample is None:
                self.counterexample = label
                logger.warning(f"Check {self.check} {self.params} failed at {label}")
            self.status = CheckStatus.FAILED
        return holds
