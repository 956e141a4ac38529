"""
Error Handling Module
Exception hierarchy for the algebra engine and the exit-code contract of the CLI
"""

import logging
from enum import IntEnum
from typing import Optional

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit codes: success / semantic failure / input error."""

    OK = 0
    FAILURE = 1
    INPUT_ERROR = 2


class SkewPBWError(Exception):
    """Base class for every error raised by skewpbw."""


class ShapeError(SkewPBWError):
    """Arity, grade or index mismatch between operands."""


class InternalAlgebraError(SkewPBWError):
    """An exact computation produced an impossible result (e.g. a nonzero remainder)."""


class UnsupportedOperationError(SkewPBWError):
    """The operation is not defined for this presentation."""


class PresentationInputError(SkewPBWError):
    """A presentation document could not be read or does not match the schema."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")


class ExpressionParseError(SkewPBWError):
    """Syntax error in an algebra expression."""

    def __init__(self, message: str, column: Optional[int] = None):
        self.column = column
        location = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{location}")


class UnknownGeneratorError(SkewPBWError):
    """An expression names a variable the presentation does not have."""


class ErrorHandler:
    """Centralized error handling for CLI commands."""

    @staticmethod
    def handle_input_error(source: str, error: Exception) -> ExitCode:
        """Handle unreadable or malformed input files and expressions."""
        logger.error(f"❌ Input error in {source}: {error}")
        return ExitCode.INPUT_ERROR

    @staticmethod
    def handle_semantic_failure(source: str, reason: str) -> ExitCode:
        """Handle well-formed input that fails a mathematical check."""
        logger.warning(f"⚠️ {source}: {reason}")
        return ExitCode.FAILURE

    @staticmethod
    def handle_unknown_generator(expression: str, error: Exception) -> ExitCode:
        """Handle expressions that mention generators outside the presentation."""
        logger.error(f"❌ Cannot reduce '{expression}': {error}")
        return ExitCode.FAILURE

    @staticmethod
    def handle_internal_error(operation: str, error: Exception) -> ExitCode:
        """Handle invariant violations inside the engine."""
        logger.error(f"❌ Internal error during {operation}: {error}")
        return ExitCode.FAILURE
