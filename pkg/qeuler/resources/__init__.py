"""Configuration resources: settings and logging setup."""

import logging
import logging.config
import logging.handlers
import os

LOGGING_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'logging.cfg')


def setup_logging(settings, verbose: bool = False):
    """Configure logging from logging.cfg and the QEULER_LOG_* settings."""
    logging.config.fileConfig(LOGGING_CONFIG, disable_existing_loggers=False)
    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else settings.LOG_LEVEL)

    if settings.LOG_FILE:
        file_handler = logging.handlers.RotatingFileHandler(
            settings.LOG_FILE, 'a', 31457280, 15)
        file_handler.setFormatter(root.handlers[0].formatter)
        root.addHandler(file_handler)
