#!/usr/bin/env python3
"""
Settings for qeuler
Environment-driven configuration with validation.
"""

import os
from pathlib import Path
from typing import Mapping, Optional

from qeuler.algebra.ErrorHandler import ConfigurationError

LOG_LEVELS = ('CRITICAL', 'ERROR', 'WARNING', 'INFO', 'DEBUG')


class QEulerSettings:
    """Configuration for the qeuler library and CLI."""

    def __init__(self, environ: Optional[Mapping[str, str]] = None):
        self._environ = os.environ if environ is None else environ
        default_cache = Path.home() / '.cache' / 'qeuler' / 'euler_cache.json'
        self.CACHE_PATH = self._get_env_var('QEULER_CACHE_PATH', str(default_cache))
        self.LOG_LEVEL = self._get_env_var('QEULER_LOG_LEVEL', 'WARNING').upper()
        self.LOG_FILE = self._environ.get('QEULER_LOG_FILE', '')

        # Oracle budgets
        self.WORD_BUDGET = self._get_int_var('QEULER_WORD_BUDGET', 10_000_000)
        self.PERMUTATION_MAX_N = self._get_int_var('QEULER_PERMUTATION_MAX_N', 10)

        # Arithmetic and sweep tuning
        self.KARATSUBA_THRESHOLD = self._get_int_var('QEULER_KARATSUBA_THRESHOLD', 48)
        self.SWEEP_WORKERS = self._get_int_var('QEULER_SWEEP_WORKERS', 1)

        self._validate_config()

    def _get_env_var(self, key: str, default: str) -> str:
        """Get environment variable, falling back to the default when empty."""
        value = self._environ.get(key, default)
        return value if value else default

    def _get_int_var(self, key: str, default: int) -> int:
        """Get integer environment variable."""
        value = self._environ.get(key, str(default))
        try:
            return int(value)
        except ValueError:
            raise ConfigurationError(f"Environment variable {key} must be an integer",
                                     {'key': key, 'value': value})

    def _validate_config(self):
        """Validate configuration values."""
        if self.LOG_LEVEL not in LOG_LEVELS:
            raise ConfigurationError(f"QEULER_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}",
                                     {'value': self.LOG_LEVEL})

        if self.WORD_BUDGET < 1:
            raise ConfigurationError("QEULER_WORD_BUDGET must be at least 1")

        # 12! is already ~479 million permutations
        if not (1 <= self.PERMUTATION_MAX_N <= 12):
            raise ConfigurationError("QEULER_PERMUTATION_MAX_N must be between 1 and 12")

        if self.KARATSUBA_THRESHOLD < 2:
            raise ConfigurationError("QEULER_KARATSUBA_THRESHOLD must be at least 2")

        if self.SWEEP_WORKERS < 1:
            raise ConfigurationError("QEULER_SWEEP_WORKERS must be at least 1")

    def to_dict(self) -> dict:
        """Convert settings to dictionary."""
        return {
            'CACHE_PATH': self.CACHE_PATH,
            'LOG_LEVEL': self.LOG_LEVEL,
            'LOG_FILE': self.LOG_FILE,
            'WORD_BUDGET': self.WORD_BUDGET,
            'PERMUTATION_MAX_N': self.PERMUTATION_MAX_N,
            'KARATSUBA_THRESHOLD': self.KARATSUBA_THRESHOLD,
            'SWEEP_WORKERS': self.SWEEP_WORKERS,
        }

    def update_from_dict(self, config_dict: dict):
        """Update settings from dictionary."""
        for key, value in config_dict.items():
            if hasattr(self, key):
                setattr(self, key, value)

        # Re-validate after update
        self._validate_config()


# Global settings instance
try:
    settings = QEulerSettings()
except ConfigurationError:
    # defaults until reload_settings() reports the bad variable
    settings = QEulerSettings(environ={})


def reload_settings() -> QEulerSettings:
    """Rebuild the global settings from the current environment."""
    fresh = QEulerSettings()
    settings.update_from_dict(fresh.to_dict())
    return settings
