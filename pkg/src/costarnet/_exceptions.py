"""Exception hierarchy for costarnet."""

from __future__ import annotations

from collections.abc import Sequence


class CostarNetError(Exception):
    """Base exception for all costarnet errors."""

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)


class ConfigError(CostarNetError):
    """Run configuration or model specification is invalid."""


class SpecificationError(ConfigError):
    """A model term refers to an unknown attribute, level or term name."""

    pass


class DataError(CostarNetError):
    """Input data is missing, malformed or inconsistent."""

    def __init__(
        self,
        message: str,
        *,
        path: str | None = None,
        line: int | None = None,
    ) -> None:
        self.path = path
        self.line = line
        super().__init__(message)

    def __str__(self) -> str:
        parts = [self.message]
        if self.path and self.line is not None:
            parts.append(f"[{self.path}:{self.line}]")
        elif self.path:
            parts.append(f"[{self.path}]")
        return " ".join(parts)


class DataFileNotFoundError(DataError):
    """An input file does not exist."""

    pass


class MalformedRowError(DataError):
    """A row does not parse or violates a field constraint."""

    pass


class DanglingReferenceError(DataError):
    """A cast row references a work or star that was not loaded."""

    def __init__(
        self,
        message: str,
        *,
        key: str,
        path: str | None = None,
        line: int | None = None,
    ) -> None:
        self.key = key
        super().__init__(message, path=path, line=line)


class UnknownRegionError(DataError):
    """A region label is not one of the known regions."""

    pass


class UndefinedInputError(DataError):
    """A statistic is undefined for the given (usually empty) graph."""

    pass


class PreconditionError(DataError):
    """An operation's precondition on its input graph does not hold."""

    pass


class NumericError(CostarNetError):
    """A numerical procedure failed or is ill-posed."""


class SeparationError(NumericError):
    """A model column perfectly predicts the response; the MLE is infinite."""

    def __init__(self, message: str, *, term: str) -> None:
        self.term = term
        super().__init__(message)


class RankDeficiencyError(NumericError):
    """The design matrix does not have full column rank."""

    def __init__(self, message: str, *, columns: Sequence[str]) -> None:
        self.columns = list(columns)
        super().__init__(message)


class DegenerateNullError(NumericError):
    """The null expectation of the cross-region count is zero."""

    def __init__(self, message: str, *, period: str) -> None:
        self.period = period
        super().__init__(message)


class SizeGuardError(NumericError):
    """A problem exceeds a configured size limit."""

    def __init__(self, message: str, *, limit: int) -> None:
        self.limit = limit
        super().__init__(message)


# Exit code mapping by error family
_EXIT_CODES: dict[type[CostarNetError], int] = {
    ConfigError: 2,
    DataError: 3,
    NumericError: 4,
}


def exit_code_for(exc: BaseException) -> int:
    """Return the CLI exit code for an exception."""
    for error_class, code in _EXIT_CODES.items():
        if isinstance(exc, error_class):
            return code
    return 1
