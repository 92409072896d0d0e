"""
Centralized exception handling for the CLI adapter
"""
import functools
from typing import Callable

import click

from core.domain.exceptions import CheckViolationError, DomainException
from infrastructure.logging import get_logger

EXIT_OK = 0
EXIT_CHECK_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the process exit status"""
    if isinstance(exc, CheckViolationError):
        return EXIT_CHECK_VIOLATION
    if isinstance(exc, (DomainException, ValueError, click.UsageError)):
        return EXIT_USAGE
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_INTERNAL


def with_error_handling(operation_name: str):
    """
    Decorator to wrap CLI commands with standardized error handling

    Domain failures are reported on stderr and turned into exit codes; click's own
    usage errors and exits pass through untouched.

    Usage:
        @with_error_handling("diagnose")
        def diagnose(...):
            pass
    """
    def decorator(func: Callable):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger(__name__)
            try:
                return func(*args, **kwargs)
            except (click.exceptions.Exit, click.exceptions.Abort, click.ClickException):
                raise
            except Exception as e:
                code = exit_code_for(e)
                if code == EXIT_CHECK_VIOLATION:
                    logger.warning(f"check_violation | operation=<{operation_name}>", failed=e.failed_checks)
                elif code == EXIT_USAGE:
                    logger.error(f"usage_error | operation=<{operation_name}> | error=<{e}>")
                elif code == EXIT_IO:
                    logger.error(f"io_error | operation=<{operation_name}> | error=<{e}>")
                else:
                    logger.error(f"Unexpected error in {operation_name}: {e}", exc_info=True)
                click.echo(f"error: {e}", err=True)
                raise click.exceptions.Exit(code)
        return wrapper
    return decorator
