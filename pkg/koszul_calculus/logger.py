"""
Structured JSON Logging
=======================
One JSON object per log line, written to stderr so that stdout only carries
tables and reports.

Notes:
- Structured fields travel on the record and are rendered by JsonFormatter
- Log levels: DEBUG (per cell), INFO (command milestones), WARNING, ERROR, CRITICAL
"""

import json
import logging
import sys
import traceback
from datetime import datetime, timezone
from typing import Any, Optional

import numpy as np


def _plain(value: Any) -> Any:
    """Field values as JSON values; cell keys such as (p, w) become strings."""
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return {'array_shape': list(value.shape)}
    if isinstance(value, np.generic):
        return value.item()
    return value


class JsonFormatter(logging.Formatter):
    """Render a record and its structured fields as one JSON line."""

    def format(self, record: logging.LogRecord) -> str:
        stamp = datetime.fromtimestamp(record.created, timezone.utc)
        line = {
            'timestamp': stamp.isoformat(timespec='milliseconds').replace('+00:00', 'Z'),
            'level': record.levelname,
            'message': record.getMessage(),
            **getattr(record, 'fields', {}),
        }
        return json.dumps(line, default=str)


class StructuredLogger:
    """
    JSON-structured logger.
    Outputs one JSON object per log line for easy filtering with jq.
    """

    def __init__(self, name: str = 'koszul_calculus', level: str = 'WARNING'):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, level.upper(), logging.WARNING))
        self.logger.propagate = False

        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(JsonFormatter())
        self.logger.handlers = [handler]

    def _log(self, level: int, message: str, fields: dict) -> None:
        if self.logger.isEnabledFor(level):
            self.logger.log(level, message, extra={'fields': _plain(fields)})

    def debug(self, message: str, **fields):
        self._log(logging.DEBUG, message, fields)

    def info(self, message: str, **fields):
        self._log(logging.INFO, message, fields)

    def warning(self, message: str, **fields):
        self._log(logging.WARNING, message, fields)

    def error(self, message: str, error: Optional[Exception] = None, **fields):
        """
        Log an error, with the exception type, message and stack trace when given.

        Args:
            message: Error message
            error: Optional exception object
            **fields: Additional context
        """
        if error is not None:
            fields.update(error_type=type(error).__name__, error_message=str(error),
                          stack_trace=traceback.format_exc())
        self._log(logging.ERROR, message, fields)

    def critical(self, message: str, error: Optional[Exception] = None, **fields):
        if error is not None:
            fields.update(error_type=type(error).__name__, error_message=str(error))
        self._log(logging.CRITICAL, message, fields)

    def log_command_start(self, run_id: str, command: str, algebra: str, **fields):
        """
        Log the start of a CLI command.

        Args:
            run_id: Identifier of this run
            command: Command name
            algebra: Algebra spec as given on the command line
            **fields: Additional run context
        """
        self.info('Command started', run_id=run_id, command=command, algebra=algebra, **fields)

    def log_command_end(self, run_id: str, command: str, exit_code: int, **fields):
        self.info('Command finished', run_id=run_id, command=command, exit_code=exit_code, **fields)


_logger: Optional[StructuredLogger] = None


def get_logger() -> StructuredLogger:
    """
    Get or create the process-wide logger.

    Returns:
        StructuredLogger instance
    """
    global _logger
    if _logger is None:
        from koszul_calculus.config import Config
        _logger = StructuredLogger(level=Config.LOG_LEVEL)
    return _logger
