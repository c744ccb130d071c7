from __future__ import annotations

import sys
import threading
from pathlib import Path
from typing import Any, List, Optional, TextIO, Union

from .stages import Stage


class ProgressReporter:
    """Stage/progress tracker with a bounded line log.

    Lines look like ``[stage] message``. They go to the in-memory buffer, to
    the log file when one is attached, and to ``stream`` when verbose.
    """

    def __init__(
        self,
        log_path: Optional[Path] = None,
        verbose: bool = False,
        max_log_lines: int = 200,
        stream: Optional[TextIO] = None,
    ) -> None:
        self._lock = threading.Lock()
        self._lines: List[str] = []
        self._max_log_lines = max_log_lines
        self._verbose = verbose
        self._stream = stream if stream is not None else sys.stderr
        self._handle: Optional[TextIO] = None
        self.stage_name: str = ""
        self.progress: float = 0.0
        self.message: str = ""
        if log_path is not None:
            log_path = Path(log_path)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            self._handle = log_path.open("a", encoding="utf-8")

    def __enter__(self) -> "ProgressReporter":
        return self

    def __exit__(self, *exc_info: Any) -> None:
        self.close()

    @property
    def lines(self) -> List[str]:
        with self._lock:
            return list(self._lines)

    def stage(self, name: Union[Stage, str], progress: float, message: str = "") -> None:
        stage_value = name.value if isinstance(name, Stage) else str(name)
        self.stage_name = stage_value
        self.progress = max(0.0, min(1.0, float(progress)))
        self.message = message
        self.log(f"[{stage_value.lower()}] {message}" if message else f"[{stage_value.lower()}]")

    def log(self, line: str) -> None:
        line = line.rstrip()
        with self._lock:
            self._lines.append(line)
            if len(self._lines) > self._max_log_lines:
                del self._lines[: len(self._lines) - self._max_log_lines]
            if self._handle is not None:
                _log_line(self._handle, line)
            if self._verbose:
                _log_line(self._stream, line)

    def close(self) -> None:
        with self._lock:
            if self._handle is not None:
                self._handle.close()
                self._handle = None


def _log_line(handle: Any, line: str) -> None:
    handle.write(line + "\n")
    handle.flush()
