"""Exception hierarchy shared by every module.

Each error knows which module/operation raised it and, where it makes sense,
the recurrence index involved, so the CLI can serialize a structured record.
"""

from __future__ import annotations


class TrfError(Exception):
    module = "trfseries"

    def __init__(self, message: str, *, operation: str | None = None,
                 index: int | None = None):
        super().__init__(message)
        self.message = message
        self.operation = operation
        self.index = index

    def to_record(self) -> dict:
        return {
            "type": type(self).__name__,
            "module": self.module,
            "operation": self.operation,
            "index": self.index,
            "message": self.message,
        }


class RuleEvaluationError(TrfError):
    """A coefficient rule could not be evaluated (typically a zero denominator)."""

    module = "recurrence_core"

    def __init__(self, label: str, index: int, reason: str, *,
                 operation: str | None = None):
        super().__init__(f"rule {label} failed at n={index}: {reason}",
                         operation=operation, index=index)
        self.label = label

    def to_record(self) -> dict:
        record = super().to_record()
        record["rule"] = self.label
        return record


class ArityError(TrfError):
    module = "recurrence_core"


class SeedError(TrfError):
    module = "recurrence_core"


class CapExceeded(TrfError):
    module = "term_census"


class TerminationViolation(TrfError):
    module = "trf_closed_form"


class ProfileOrderError(TrfError):
    module = "trf_closed_form"


class IncompleteCoverage(TrfError):
    module = "trf_closed_form"


class DomainError(TrfError):
    module = "series_eval"


class ConfigError(TrfError):
    module = "cli"
