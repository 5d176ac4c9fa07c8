"""
Reports
=======
Report model, deterministic JSON emission and human-readable rendering.

Notes:
- JSON uses sort_keys, two-space indent and a trailing newline
- Field elements reach the payload already rendered as strings
- Timings stay empty unless KOSZUL_RECORD_TIMINGS is set, so two runs with
  the same config and seed produce the same bytes
"""

import json
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from koszul_calculus.config import Config
from koszul_calculus.exceptions import ConfigurationError
from koszul_calculus.logger import get_logger

logger = get_logger()


class Report(BaseModel):
    """Top-level JSON report."""

    version: str = Config.VERSION
    config: Dict[str, Any]
    payload: Dict[str, Any]
    timings: Dict[str, float] = Field(default_factory=dict)

    def to_json(self) -> str:
        data = jsonable(self.model_dump())
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def jsonable(value: Any) -> Any:
    """Convert numpy scalars, tuples and tuple keys into plain JSON values."""
    if isinstance(value, dict):
        return {str(key) if not isinstance(key, tuple) else ','.join(map(str, key)): jsonable(v)
                for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [jsonable(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (int, float, str)) or value is None:
        return value
    return str(value)


class Timings:
    """Wall-clock time per stage, recorded only when enabled."""

    def __init__(self, enabled: Optional[bool] = None):
        self.enabled = Config.RECORD_TIMINGS if enabled is None else enabled
        self.stages: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.stages[name] = round(time.perf_counter() - start, 4)

    def to_payload(self) -> Dict[str, float]:
        return dict(self.stages)


def render_text(title: str, tables: List[Tuple[str, pd.DataFrame]], lines: List[str]) -> str:
    """
    Human-readable output of a command.

    Args:
        title: Heading (command and algebra)
        tables: (caption, frame) pairs rendered with DataFrame.to_string()
        lines: Verdict and summary lines printed after the tables

    Returns:
        Text ending with a newline
    """
    parts = [title, '=' * len(title)]
    for caption, frame in tables:
        parts.append('')
        parts.append(caption)
        parts.append(frame.to_string() if not frame.empty else '(empty)')
    if lines:
        parts.append('')
        parts.extend(lines)
    return '\n'.join(parts) + '\n'


def emit(text: str, output: Optional[str]) -> None:
    """Write to the output path, or to stdout when none is given."""
    if output is None:
        print(text, end='')
        return
    try:
        Path(output).write_text(text, encoding='utf-8')
    except OSError as e:
        raise ConfigurationError(f'cannot write report to {output}: {e.strerror}') from e
    logger.info('Report written', output=output, size=len(text))
