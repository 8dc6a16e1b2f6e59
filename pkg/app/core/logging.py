"""
Logging configuration for the application.
"""

import sys
from typing import Optional

from loguru import logger

from app.config.settings import settings

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logging(log_level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """
    Set up logging configuration for the application.

    Args:
        log_level: The stderr level to use (defaults to settings.LOG_LEVEL)
        log_file: Path of the rotating log file (defaults to settings.LOG_FILE);
            pass an empty string to disable the file sink
    """
    if log_level is None:
        log_level = settings.LOG_LEVEL
    if log_file is None:
        log_file = str(settings.LOG_FILE)

    logger.remove()
    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=log_level.upper())
    if log_file:
        try:
            logger.add(
                log_file,
                rotation=settings.LOG_ROTATION,
                retention=settings.LOG_RETENTION,
                format=FILE_FORMAT,
                level="DEBUG",
            )
        except OSError as e:
            logger.warning(f"File logging disabled: {e}")


def get_logger(name: Optional[str] = None):
    """
    Get a logger bound to the specified name.

    Args:
        name: The name for the logger (default: None)

    Returns:
        A loguru logger carrying ``name`` in its extra fields
    """
    return logger.bind(name=name) if name else logger
