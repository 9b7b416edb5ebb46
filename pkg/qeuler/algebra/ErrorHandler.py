#!/usr/bin/env python3
"""
Error handling for qeuler
Exception hierarchy, user-facing messages and process exit statuses.
"""

import logging
import traceback
from datetime import datetime
from typing import Dict, List, Optional

logger = logging.getLogger(__name__)

# Process exit statuses shared by every command.
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BUDGET = 4


class QEulerError(Exception):
    """Base exception for qeuler-specific errors."""

    def __init__(self, message: str, error_code: str = "GENERIC_ERROR",
                 details: Optional[Dict] = None):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class DomainError(QEulerError):
    """Arguments outside the mathematical domain of an operation."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "DOMAIN_ERROR", details)


class ConfigurationError(QEulerError):
    """Invalid settings or sweep configuration."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "INVALID_CONFIG", details)


class BudgetExceededError(QEulerError):
    """An enumeration oracle was asked for more objects than its budget."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "BUDGET_EXCEEDED", details)


class CacheFormatError(QEulerError):
    """A cache document has the wrong version or a malformed entry."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "CACHE_FORMAT", details)


class CacheIOError(QEulerError):
    """A cache path could not be read or written."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "IO_ERROR", details)


class OutputIOError(QEulerError):
    """An output path could not be written."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "OUTPUT_IO", details)


class ZeroDivisorError(QEulerError, ValueError):
    """Polynomial division by the zero polynomial."""

    def __init__(self, message: str = "division by the zero polynomial",
                 details: Optional[Dict] = None):
        super().__init__(message, "ZERO_DIVISOR", details)


class ErrorHandler:
    """Turns exceptions into user-facing messages and exit statuses."""

    ERROR_MESSAGES = {
        'DOMAIN_ERROR': {
            'user_message': 'Argument outside the supported domain',
            'technical_message': 'Operation preconditions were not met',
            'suggestions': [
                'The descent period k must be at least 2',
                'Lengths n must be non-negative',
            ],
            'exit_status': EXIT_USAGE,
        },
        'INVALID_CONFIG': {
            'user_message': 'Invalid configuration',
            'technical_message': 'Settings or sweep configuration failed validation',
            'suggestions': [
                'Check the QEULER_* environment variables',
                'max-N must be at least 2 and the k-set non-empty',
            ],
            'exit_status': EXIT_USAGE,
        },
        'BUDGET_EXCEEDED': {
            'user_message': 'Enumeration budget exceeded',
            'technical_message': 'Brute-force oracle refused an oversized enumeration',
            'suggestions': [
                'Use the recursion instead of --oracle for large n',
                'Raise QEULER_PERMUTATION_MAX_N or QEULER_WORD_BUDGET deliberately',
            ],
            'exit_status': EXIT_BUDGET,
        },
        'CACHE_FORMAT': {
            'user_message': 'Cache file is not compatible',
            'technical_message': 'Cache document version or entries are invalid',
            'suggestions': [
                'Re-export the cache with this version of qeuler',
                'Delete the cache file and run "qeuler cache warm" again',
            ],
            'exit_status': EXIT_IO,
        },
        'IO_ERROR': {
            'user_message': 'File could not be read or written',
            'technical_message': 'Filesystem operation failed',
            'suggestions': [
                'Check that the path exists and is writable',
                'Check --cache-path and QEULER_CACHE_PATH',
            ],
            'exit_status': EXIT_IO,
        },
        'OUTPUT_IO': {
            'user_message': 'Output file could not be written',
            'technical_message': 'Opening the --output path failed',
            'suggestions': ['Check that the --output directory exists and is writable'],
            'exit_status': EXIT_IO,
        },
        'ZERO_DIVISOR': {
            'user_message': 'Division by the zero polynomial',
            'technical_message': 'div_exact called with a zero divisor',
            'suggestions': [],
            'exit_status': EXIT_USAGE,
        },
        'GENERIC_ERROR': {
            'user_message': 'Unexpected error',
            'technical_message': 'An unexpected error occurred',
            'suggestions': ['Re-run with --verbose for a stack trace'],
            'exit_status': EXIT_IO,
        },
    }

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def handle_error(self, error: Exception, context: Optional[Dict] = None,
                     debug: bool = False) -> Dict:
        """
        Log an exception and build a user-facing error record.

        Args:
            error: The exception that occurred
            context: Additional context about the error
            debug: Include the stack trace in the record

        Returns:
            Dict with error information
        """
        context = context or {}
        error_code = self._determine_error_code(error)
        error_info = self.ERROR_MESSAGES[error_code]

        if error_code == 'GENERIC_ERROR':
            self.logger.error(f"Unexpected error: {error}", exc_info=True)
        else:
            self.logger.debug(f"{error_code}: {error}")

        details = getattr(error, 'details', {}) or {}
        error_response = {
            'code': error_code,
            'message': str(error) or error_info['user_message'],
            'user_message': error_info['user_message'],
            'technical_message': error_info['technical_message'],
            'suggestions': list(error_info['suggestions']),
            'details': details,
            'context': context,
            'exit_status': error_info['exit_status'],
            'timestamp': datetime.now().isoformat(),
        }
        if debug:
            error_response['stack_trace'] = traceback.format_exc()
        return error_response

    def _determine_error_code(self, error: Exception) -> str:
        """Determine error code based on exception type."""
        if isinstance(error, QEulerError):
            if error.error_code in self.ERROR_MESSAGES:
                return error.error_code
            return 'GENERIC_ERROR'
        if isinstance(error, OSError):
            return 'IO_ERROR'
        return 'GENERIC_ERROR'

    def exit_status_for(self, error: Exception) -> int:
        """Process exit status for an exception."""
        return self.ERROR_MESSAGES[self._determine_error_code(error)]['exit_status']

    def format_for_terminal(self, error: Exception, debug: bool = False) -> List[str]:
        """Lines to print on stderr for an exception."""
        response = self.handle_error(error, debug=debug)
        lines = [f"error: {response['message']}"]
        lines.extend(f"  hint: {hint}" for hint in response['suggestions'])
        if debug and 'stack_trace' in response:
            lines.append(response['stack_trace'].rstrip())
        return lines


# Global error handler instance
error_handler = ErrorHandler()


def exit_status_for(error: Exception) -> int:
    """Convenience function mapping an exception to an exit status."""
    return error_handler.exit_status_for(error)
