import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

_REPO_ROOT = Path(__file__).resolve().parents[4]
_DEFAULT_RUNTIME_DIR = _REPO_ROOT / "runtime"
_DEFAULT_OUTPUT_DIR = _REPO_ROOT / "runtime" / "out"

load_dotenv()


@dataclass(frozen=True)
class RuntimePaths:
    runtime_dir: Path
    logs_dir: Path


def _ensure_dirs(*paths: Path) -> None:
    for path in paths:
        path.mkdir(parents=True, exist_ok=True)


def get_runtime_paths() -> RuntimePaths:
    runtime_dir = Path(
        os.getenv("DBE_RUNTIME_DIR", str(_DEFAULT_RUNTIME_DIR))
    ).expanduser()
    logs_dir = runtime_dir / "logs"
    _ensure_dirs(runtime_dir, logs_dir)
    return RuntimePaths(
        runtime_dir=runtime_dir,
        logs_dir=logs_dir,
    )


def default_output_dir() -> Path:
    return Path(os.getenv("DBE_OUTPUT_DIR", str(_DEFAULT_OUTPUT_DIR))).expanduser()


def default_workers() -> int:
    return _int_env("DBE_WORKERS", 1, minimum=1)


def _int_env(name: str, fallback: int, minimum: Optional[int] = None) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return fallback
    try:
        value = int(raw)
    except ValueError:
        return fallback
    if minimum is not None and value < minimum:
        return fallback
    return value
