"""
Error handling and exceptions for mbgg.

Provides the exception hierarchy shared by every subpackage and a small
context manager used by the command-line front door.
"""

from typing import Optional

from mbgg.logging import get_logger

logger = get_logger(__name__)


class MBGGError(Exception):
    """Base exception for mbgg"""

    def __init__(self, message: str, code: str = "UNKNOWN_ERROR", details: Optional[dict] = None):
        self.message = message
        self.code = code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self):
        """Convert exception to dictionary"""
        return {
            'error_type': self.__class__.__name__,
            'code': self.code,
            'message': self.message,
            'details': self.details
        }


class ConfigurationError(MBGGError):
    """Configuration-related error"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message, "CONFIG_ERROR", details)


class InvalidArgumentError(MBGGError):
    """An argument violates an operation's precondition"""

    def __init__(self, message: str, field: Optional[str] = None, details: Optional[dict] = None):
        if details is None:
            details = {}
        if field is not None:
            details['field'] = field
        super().__init__(message, "INVALID_ARGUMENT", details)


class InvalidMoveError(MBGGError):
    """A move claims a square that is already taken"""

    def __init__(self, message: str, square: Optional[str] = None):
        details = {}
        if square is not None:
            details['square'] = square
        super().__init__(message, "INVALID_MOVE", details)


class NotBipartiteError(MBGGError):
    """The underlying undirected graph has an odd cycle"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message, "NOT_BIPARTITE", details)


class InvalidInstanceError(MBGGError):
    """A Geography instance is not convertible"""

    def __init__(self, message: str, vertex: Optional[str] = None, details: Optional[dict] = None):
        if details is None:
            details = {}
        if vertex is not None:
            details['vertex'] = vertex
        super().__init__(message, "INVALID_INSTANCE", details)


class InvalidLibraryError(MBGGError):
    """A gadget library is missing a class or is malformed"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message, "INVALID_LIBRARY", details)


class GenerationError(MBGGError):
    """The instance generator ran out of retries"""

    def __init__(self, message: str, attempts: Optional[int] = None):
        details = {}
        if attempts is not None:
            details['attempts'] = attempts
        super().__init__(message, "GENERATION_FAILURE", details)


class SynthesisError(MBGGError):
    """Gadget synthesis exhausted its budget"""

    def __init__(self, message: str, report: Optional[str] = None, details: Optional[dict] = None):
        if details is None:
            details = {}
        if report is not None:
            details['report'] = report
        super().__init__(message, "SYNTHESIS_FAILURE", details)


class ProtocolError(MBGGError):
    """A regular-play choice was missing, unexpected or exhausted"""

    def __init__(self, message: str, vertex: Optional[str] = None):
        details = {}
        if vertex is not None:
            details['vertex'] = vertex
        super().__init__(message, "PROTOCOL_ERROR", details)


class NotADeviationError(MBGGError):
    """The square Maker claimed is a regular play square"""

    def __init__(self, message: str, square: Optional[str] = None):
        details = {}
        if square is not None:
            details['square'] = square
        super().__init__(message, "NOT_A_DEVIATION", details)


class InvalidPiecesError(MBGGError):
    """Puzzle piece pairings overlap or break a trait"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message, "INVALID_PIECES", details)


class ParseError(MBGGError):
    """Malformed input text"""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        details = {}
        if line is not None:
            details['line'] = line
        if path is not None:
            details['path'] = path
        super().__init__(message, "PARSE_ERROR", details)
        self.line = line

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


class ErrorHandler:
    """Context manager for error handling"""

    def __init__(self, operation_name: str, reraise: bool = False):
        self.operation_name = operation_name
        self.reraise = reraise
        self.exception = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is not None:
            self.exception = exc_val
            if isinstance(exc_val, MBGGError):
                logger.error(
                    "operation_failed",
                    operation=self.operation_name,
                    **exc_val.to_dict()
                )
            else:
                logger.error(
                    "operation_crashed",
                    operation=self.operation_name,
                    exc_info=(exc_type, exc_val, exc_tb)
                )

            if self.reraise:
                return False

            return True  # Suppress exception

        return False
