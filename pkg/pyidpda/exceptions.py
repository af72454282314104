from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .automaton import ValidationReport


class IdpdaException(Exception):
    """An error raised by the toolkit."""


class AlphabetError(IdpdaException):
    """The alphabet is malformed."""


class UnknownTokenError(AlphabetError):
    """A token is not declared in the alphabet."""


class AlphabetMismatchError(IdpdaException):
    """Two automata do not share an input alphabet."""


class IllNestedInputError(IdpdaException):
    """The input string is not well-nested."""


class RelationError(IdpdaException):
    """A behavior relation is malformed, mismatched in size or labels no state."""


class AutomatonValidationError(IdpdaException):
    """An automaton violates its type invariants."""

    def __init__(self, report: 'ValidationReport'):
        super().__init__(f"invalid {report.kind}: {len(report.issues)} issue(s)")
        self.report = report


class DocumentSyntaxError(IdpdaException):
    """An automaton document is malformed."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class LexicalError(IdpdaException):
    """Text cannot be split into alphabet tokens."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset


class ResourceLimitError(IdpdaException):
    """A configured resource cap was exceeded."""

    def __init__(self, message: str, limit: int):
        super().__init__(message)
        self.limit = limit


class WitnessParameterError(IdpdaException):
    """Witness family parameters are out of range."""


class GadgetParameterError(IdpdaException):
    """Gadget string parameters are out of range."""


class ProfileError(IdpdaException):
    """A verification profile or command line is malformed."""


class ExitCodes:
    """Process exit statuses for toolkit errors."""

    SUCCESS = 0
    CHECK_FAILED = 1
    USAGE = 2
    BUDGET = 3

    EXIT_CODES = {
        ProfileError: USAGE,
        WitnessParameterError: USAGE,
        GadgetParameterError: USAGE,
        RelationError: USAGE,
        ResourceLimitError: BUDGET,
        DocumentSyntaxError: 65,
        LexicalError: 65,
        AutomatonValidationError: 65,
        AlphabetMismatchError: 65,
        AlphabetError: 65,
        IllNestedInputError: 65,
    }

    @classmethod
    def get_exit_code(cls, error: BaseException) -> int:
        """
        Get the exit status corresponding to the given error.

        Args:
            error (BaseException): The error to look up.
        Returns:
            int: The exit status of the closest registered class, 70 otherwise.
        """
        for klass in type(error).__mro__:
            if klass in cls.EXIT_CODES:
                return cls.EXIT_CODES[klass]
        return 70


def raise_for_issues(report: 'ValidationReport') -> None:
    """
    Handles a failed validation.

    Checks if the provided report is clean. If not, logs every issue and raises
    an AutomatonValidationError carrying the report. Returns None otherwise.

    Args:
        report (ValidationReport): The report produced by `validate`.
    Returns:
        None
    Raises:
        AutomatonValidationError: If the report lists at least one issue.
    """
    if report.valid:
        return

    from .logger import logger

    for issue in report.issues:
        logger.debug("%s issue at %s: %s", report.kind, issue.location, issue.message)
    raise AutomatonValidationError(report)
