"""
Logging utilities for ncpoisson

Every module logs through a child of the "ncpoisson" logger. Only the root
package logger gets handlers, and the console handler writes to stderr so
reports on stdout stay parseable.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

ROOT_LOGGER = "ncpoisson"
FALLBACK_LEVEL = "WARNING"

CONSOLE_FORMAT = '%(levelname)s %(name)s: %(message)s'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class StderrHandler(logging.StreamHandler):
    """Stream handler bound to whatever sys.stderr is at emit time"""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def resolve_level(level: Optional[str]) -> int:
    """Numeric level for a name such as 'debug'; unknown names give WARNING"""
    if not level:
        return getattr(logging, FALLBACK_LEVEL)
    value = logging.getLevelName(level.strip().upper())
    return value if isinstance(value, int) else getattr(logging, FALLBACK_LEVEL)


def setup_logger(
    name: str = ROOT_LOGGER,
    level: Optional[str] = FALLBACK_LEVEL,
    log_file: Optional[str] = None
) -> logging.Logger:
    """Configure the package logger; calling it again replaces the handlers"""

    logger = logging.getLogger(name)
    logger.setLevel(resolve_level(level))
    logger.propagate = False

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    console_handler = StderrHandler()
    console_handler.setLevel(logger.level)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_path, encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
        )
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str = ROOT_LOGGER) -> logging.Logger:
    """Logger for a module; names outside the package are nested under it"""
    if name != ROOT_LOGGER and not name.startswith(ROOT_LOGGER + "."):
        name = f"{ROOT_LOGGER}.{name}"
    return logging.getLogger(name)
