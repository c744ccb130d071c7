from __future__ import annotations

import hashlib
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import yaml

if TYPE_CHECKING:
    from pydantic import BaseModel, Field, ValidationError, root_validator, validator
else:
    try:
        from pydantic.v1 import BaseModel, Field, ValidationError, root_validator, validator
    except ImportError:  # pragma: no cover - pydantic v1 fallback
        from pydantic import BaseModel, Field, ValidationError, root_validator, validator

from ..efficiency.costs import CostScheme
from ..errors import AnalysisError
from ..synthgen.params import SynthParams

DEFAULT_GROUPS = 2
_PATH_KEYS = ("nodes", "edges", "out")
# Fields that change how the run executes but never what it reports.
_EXECUTION_ONLY = {"out", "workers", "progress"}


class ConfigValidationError(AnalysisError):
    def __init__(self, errors: List[Dict[str, Any]]) -> None:
        self.errors = errors
        super().__init__("E_VALIDATION_INPUT", _format_config_errors(errors), {"errors": errors})


class PipelineConfig(BaseModel):
    nodes: Optional[Path] = None
    edges: Optional[Path] = None
    synth: Optional[SynthParams] = None
    scheme: CostScheme = CostScheme()
    groups: Optional[int] = Field(None, ge=2)
    sweep: Optional[Tuple[int, int]] = None
    restarts: int = Field(20, ge=1)
    seed: int = Field(0, ge=0)
    bins: int = Field(5, ge=2)
    xmin: Optional[int] = Field(None, ge=1)
    out: Optional[Path] = None
    largest_component: bool = False
    workers: int = Field(1, ge=1)
    progress: bool = False

    class Config:
        extra = "forbid"
        allow_mutation = False

    @validator("scheme", pre=True)
    def _parse_scheme(cls, value: Any) -> Any:
        if isinstance(value, str):
            parts = [part.strip() for part in value.split(",")]
            if len(parts) != 3:
                raise ValueError("scheme must be vv,vp,pp")
            return dict(zip(("vv", "vp", "pp"), parts))
        return value

    @validator("sweep", pre=True)
    def _parse_sweep(cls, value: Any) -> Any:
        if isinstance(value, str):
            lo, sep, hi = value.partition("..")
            if not sep:
                raise ValueError("sweep must look like lo..hi")
            return (lo.strip(), hi.strip())
        return value

    @validator("sweep")
    def _sweep_bounds(cls, value: Optional[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        if value is not None and (value[0] < 2 or value[1] < value[0]):
            raise ValueError("sweep needs 2 <= lo <= hi")
        return value

    @root_validator(skip_on_failure=True)
    def _one_source(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        has_files = values.get("nodes") is not None or values.get("edges") is not None
        if has_files and (values.get("nodes") is None or values.get("edges") is None):
            raise ValueError("nodes and edges must be given together")
        if has_files == (values.get("synth") is not None):
            raise ValueError("exactly one input source is required: nodes/edges or synth")
        if values.get("groups") is not None and values.get("sweep") is not None:
            raise ValueError("groups and sweep are mutually exclusive")
        return values

    @property
    def group_count(self) -> Optional[int]:
        if self.sweep is not None:
            return None
        return self.groups if self.groups is not None else DEFAULT_GROUPS

    def echo(self) -> Dict[str, Any]:
        """Report-facing view: only fields that determine the analysis."""
        data: Dict[str, Any] = {}
        for key, value in self.dict(exclude=_EXECUTION_ONLY).items():
            if isinstance(value, Path):
                value = value.as_posix()
            elif isinstance(value, tuple):
                value = list(value)
            data[key] = value
        data["groups"] = self.group_count
        data["scheme"] = str(self.scheme)
        # A derived generator seed lives in the report's seeds section only.
        if self.synth is not None and "seed" not in self.synth.__fields_set__:
            data["synth"].pop("seed", None)
        return data


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a YAML mapping; relative paths resolve against the file's folder."""
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            raw = yaml.safe_load(handle)
    except OSError as exc:
        raise ConfigValidationError(
            [{"loc": ["config"], "msg": f"cannot read config file: {exc}", "type": "io_error"}]
        ) from exc
    except yaml.YAMLError as exc:
        raise ConfigValidationError(
            [{"loc": ["config"], "msg": f"invalid YAML: {exc}", "type": "parse_error.yaml"}]
        ) from exc
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigValidationError(
            [{"loc": ["config"], "msg": "config file must hold a mapping", "type": "type_error.dict"}]
        )
    values = {_normalize_key(key): value for key, value in raw.items()}
    if isinstance(values.get("synth"), dict):
        values["synth"] = {_normalize_key(key): value for key, value in values["synth"].items()}
    for key in _PATH_KEYS:
        if isinstance(values.get(key), str):
            candidate = Path(values[key]).expanduser()
            values[key] = candidate if candidate.is_absolute() else path.parent / candidate
    return values


def merge_config(
    file_values: Optional[Mapping[str, Any]] = None,
    flag_values: Optional[Mapping[str, Any]] = None,
) -> PipelineConfig:
    """Explicit flags (non-None) override config-file values."""
    merged: Dict[str, Any] = dict(file_values or {})
    for key, value in (flag_values or {}).items():
        if value is None:
            continue
        if key == "synth" and isinstance(value, dict) and isinstance(merged.get("synth"), dict):
            merged["synth"] = {**merged["synth"], **value}
        else:
            merged[key] = value
    # groups on the command line beats a sweep from the file, and vice versa.
    if (flag_values or {}).get("groups") is not None:
        merged.pop("sweep", None)
    if (flag_values or {}).get("sweep") is not None:
        merged.pop("groups", None)
    try:
        return PipelineConfig.parse_obj(merged)
    except ValidationError as exc:
        raise ConfigValidationError(_errors_from_pydantic(exc)) from exc


def derive_seed(seed: int, stage: str) -> int:
    """32-bit seed for one stage, independent of every other stage name."""
    digest = hashlib.sha256(stage.encode("utf-8")).digest()
    words = [int.from_bytes(digest[idx : idx + 4], "big") for idx in range(0, 16, 4)]
    state = np.random.SeedSequence([int(seed), *words]).generate_state(1, dtype=np.uint32)
    return int(state[0])


def _normalize_key(key: Any) -> str:
    return str(key).strip().replace("-", "_")


def _errors_from_pydantic(error: ValidationError) -> List[Dict[str, Any]]:
    errors: List[Dict[str, Any]] = []
    for entry in error.errors():
        errors.append(
            {
                "loc": [str(part) for part in entry.get("loc", ())],
                "msg": entry.get("msg", "invalid value"),
                "type": entry.get("type", "value_error"),
            }
        )
    return errors


def _format_config_errors(errors: List[Dict[str, Any]]) -> str:
    if not errors:
        return "config validation failed"
    parts: List[str] = []
    for entry in errors:
        loc = entry.get("loc") or []
        msg = entry.get("msg", "invalid value")
        parts.append(f"{'.'.join(loc)}: {msg}" if loc else msg)
    return "config validation failed: " + "; ".join(parts)
