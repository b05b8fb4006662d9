"""
Engine Exceptions

Every failure an operation can signal is an EngineError carrying a
human-readable `detail` and the process `exit_code` the CLI maps it to:

    1 - data / validation errors
    2 - usage errors (raised by the argument parser)
"""

from typing import Any, Optional


class EngineError(Exception):
    exit_code = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class UsageError(EngineError):
    exit_code = 2


class ParseError(EngineError):
    pass


class ConfigError(EngineError):
    pass


class OntologyValidationError(EngineError):
    """Raised when an ontology fails validation; carries the full report."""

    def __init__(self, report: Any, label: str = "ontology"):
        self.report = report
        count = len(report.violations)
        first = report.violations[0].message if count else ""
        super().__init__(f"{label} is invalid ({count} violation(s)); first: {first}")


class DegenerateGraphError(EngineError):
    pass


class AbsentDimensionError(EngineError):
    pass


class IncompleteIdealError(EngineError):
    def __init__(self, element: str, missing: str):
        self.element = element
        self.missing = missing
        super().__init__(f"ideal element {element} has no {missing}")


class DegenerateIdealError(EngineError):
    pass


class IncompleteNodeError(EngineError):
    pass


class MalformedPathError(EngineError):
    pass


class DegenerateShockError(EngineError):
    pass


class DomainError(EngineError):
    pass


class EmptyDatabaseError(EngineError):
    pass


class SchemaError(EngineError):
    pass


class InsufficientDataError(EngineError):
    def __init__(self, detail: str, match_count: int):
        self.match_count = match_count
        super().__init__(f"{detail} (matching cases: {match_count})")
