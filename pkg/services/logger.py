"""Logging service for the verification toolkit."""

import logging
import sys
from pathlib import Path
from typing import Optional

import colorlog

DEFAULT_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)-20s | %(message)s"
COMPONENTS = ("suite", "operators", "ledger", "cli")


def setup_logging(
    level: str = "WARNING",
    log_file: Optional[str] = None,
    format_string: Optional[str] = None
) -> None:
    """Set up logging for the whole process.

    The console handler writes to stderr so stdout stays machine-readable.
    """

    numeric_level = getattr(logging, level.upper(), logging.WARNING)

    if format_string is None:
        format_string = DEFAULT_FORMAT

    console_formatter = colorlog.ColoredFormatter(
        "%(log_color)s" + format_string,
        datefmt="%Y-%m-%d %H:%M:%S",
        log_colors={
            "DEBUG": "cyan",
            "INFO": "green",
            "WARNING": "yellow",
            "ERROR": "red",
            "CRITICAL": "bold_red",
        },
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    # Remove existing handlers
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_path)
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(logging.Formatter(format_string, datefmt="%Y-%m-%d %H:%M:%S"))
        root_logger.addHandler(file_handler)

    _setup_component_loggers(numeric_level)


def _setup_component_loggers(level: int) -> None:
    for component in COMPONENTS:
        logging.getLogger(component).setLevel(level)


def get_suite_logger(suite_name: str) -> logging.Logger:
    """Logger for one verification suite, under the ``suite`` component."""
    return logging.getLogger(f"suite.{suite_name}")


def get_component_logger(component: str) -> logging.Logger:
    if component not in COMPONENTS:
        raise ValueError(f"Unknown logging component: {component}")
    return logging.getLogger(component)


class SuiteLoggerAdapter(logging.LoggerAdapter):
    """Prefixes every record with the run seed."""

    def __init__(self, logger: logging.Logger, seed: Optional[int] = None):
        super().__init__(logger, {})
        self.seed = seed

    def process(self, msg, kwargs):
        if self.seed is not None:
            msg = f"[run {self.seed}] {msg}"
        return msg, kwargs

    def log_execution_start(self, action: str) -> None:
        self.info(f"EXECUTION START: {action}")

    def log_execution_complete(self, action: str, duration_ms: Optional[int] = None) -> None:
        duration_str = f" ({duration_ms}ms)" if duration_ms is not None else ""
        self.info(f"EXECUTION COMPLETE: {action}{duration_str}")

    def log_violation(self, case_id: str, lhs: float, rhs: float) -> None:
        self.warning(f"VIOLATION {case_id}: lhs={lhs:.6e} rhs={rhs:.6e}")

    def log_error(self, action: str, error: str) -> None:
        self.error(f"ERROR in {action}: {error}")


def create_run_logger(seed: int) -> SuiteLoggerAdapter:
    """Logger adapter for one `verify` run."""
    return SuiteLoggerAdapter(logging.getLogger("suite"), seed)
