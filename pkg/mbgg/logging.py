"""
Logging setup for mbgg.

Modules log through ``get_logger(__name__)``; this module wires structlog
onto the standard library handlers once per process.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

import structlog


class MBGGLogger:
    """Central logging system for mbgg"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._configured = False
        return cls._instance

    def setup(self, level: str = "INFO", log_file: Optional[str] = None, json_logs: bool = False) -> None:
        """
        Setup logging system.

        Args:
            level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            log_file: Optional file to write JSON lines to
            json_logs: Render console output as JSON as well
        """
        if self._configured:
            return

        numeric = getattr(logging, level.upper(), logging.INFO)
        root = logging.getLogger('mbgg')
        root.setLevel(numeric)
        root.handlers = []

        # Console output goes to stderr so reports on stdout stay clean
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(logging.Formatter('%(message)s'))
        root.addHandler(console_handler)

        if log_file:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(logging.Formatter('%(message)s'))
            root.addHandler(file_handler)

        renderer = (
            structlog.processors.JSONRenderer()
            if json_logs or log_file
            else structlog.dev.ConsoleRenderer(colors=False)
        )
        structlog.configure(
            processors=[
                structlog.stdlib.filter_by_level,
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.format_exc_info,
                renderer,
            ],
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=True,
        )
        self._configured = True

    def reset(self) -> None:
        """Allow a later setup() call to reconfigure"""
        self._configured = False


# Singleton instance
_logger_instance = MBGGLogger()


def setup_logging(level: str = "INFO", log_file: Optional[str] = None, json_logs: bool = False) -> None:
    """Setup global logging"""
    _logger_instance.setup(level, log_file, json_logs)


def get_logger(name: str):
    """Get logger for a module; names outside the package are put under ``mbgg.``"""
    if name != "mbgg" and not name.startswith("mbgg."):
        name = f"mbgg.{name}"
    return structlog.get_logger(name)
