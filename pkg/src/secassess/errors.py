"""Exception types shared across the package.

Every error that crosses the CLI or HTTP boundary maps onto one of the
published machine-readable codes (see ``api_code``).
"""

from __future__ import annotations


class SecAssessError(Exception):
    """Base class for all package errors."""

    api_code = "runtime-error"


class ParseError(SecAssessError):
    """A document could not be parsed (malformed JSON, wrong shape)."""

    api_code = "parse-error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class CatalogValidationError(SecAssessError):
    """A catalog failed referential/structural validation."""

    api_code = "parse-error"

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(f"[{v.rule_id}] {v.entity_id}: {v.message}" for v in self.violations)
        super().__init__(f"{len(self.violations)} catalog violation(s): {lines}")


class UnknownIdError(SecAssessError):
    """A referenced entity id does not exist."""

    api_code = "unknown-id"


class UnknownQuestionError(UnknownIdError):
    """An answer referenced a question id absent from the catalog."""


class UnknownCatalogVersionError(SecAssessError):
    """A session pinned a catalog version that cannot be resolved."""

    api_code = "version-mismatch"


class TypeMismatchError(SecAssessError):
    """An answer value is incompatible with its question's answer kind."""

    api_code = "type-mismatch"


class MissingThresholdError(SecAssessError):
    """A target requires a threshold but neither profile nor default supplies one."""

    api_code = "missing-threshold"


class RangeError(SecAssessError):
    """A maturity-level argument fell outside 1..5."""

    api_code = "range-error"


class VersionMismatchError(SecAssessError):
    """Two artifacts pinned different catalog or format versions."""

    api_code = "version-mismatch"
