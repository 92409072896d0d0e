"""Domain-specific exceptions for the balanced random walk laboratory"""

from typing import Optional, Tuple


class DomainException(Exception):
    """Base exception for domain-specific errors"""
    pass


class ParameterError(DomainException):
    """Raised when law parameters, tolerances or horizons are invalid"""
    pass


class OmegaDomainError(DomainException):
    """Raised when an environment value falls outside (0, 1/2]"""

    def __init__(self, message: str, site: Optional[int] = None, value: Optional[float] = None):
        super().__init__(message)
        self.site = site
        self.value = value


class WindowError(DomainException):
    """Raised when a lattice window does not cover the sites an operation needs"""

    def __init__(
        self,
        message: str,
        required: Optional[Tuple[int, int]] = None,
        available: Optional[Tuple[int, int]] = None,
    ):
        if required is not None and available is not None:
            message = f"{message} | required=<[{required[0]}, {required[1]}]> | available=<[{available[0]}, {available[1]}]>"
        super().__init__(message)
        self.required = required
        self.available = available


class EnvironmentParseError(DomainException):
    """Raised when an environment file is malformed"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        context = []
        if line is not None:
            context.append(f"line=<{line}>")
        if field is not None:
            context.append(f"field=<{field}>")
        if context:
            message = f"{message} | {' | '.join(context)}"
        super().__init__(message)
        self.line = line
        self.field = field


class UsageError(DomainException):
    """Raised when an operation is invoked on the wrong kind of input"""
    pass


class EmptySampleError(DomainException):
    """Raised when no trial function satisfies a scoring constraint"""
    pass


class CheckViolationError(DomainException):
    """Raised when an asserted lemma inequality is violated beyond its slack"""

    def __init__(self, message: str, failed_checks: Optional[list] = None):
        super().__init__(message)
        self.failed_checks = failed_checks or []
