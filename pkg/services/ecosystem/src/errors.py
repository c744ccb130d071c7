from __future__ import annotations

from typing import Any, Dict, Optional, TypedDict

ERROR_CODES = (
    "E_VALIDATION_INPUT",
    "E_PARSE",
    "E_REFERENTIAL",
    "E_DEGENERATE_INPUT",
    "E_SINGULAR",
    "E_IO_WRITE",
)


class ErrorPayload(TypedDict):
    code: str
    message: str
    detail: Dict[str, Any]


def build_error(
    code: str,
    message: str,
    detail: Optional[Dict[str, Any]] = None,
) -> ErrorPayload:
    return {
        "code": code,
        "message": message,
        "detail": detail or {},
    }


class AnalysisError(ValueError):
    def __init__(
        self,
        code: str,
        message: str,
        detail: Optional[Dict[str, Any]] = None,
    ) -> None:
        if code not in ERROR_CODES:
            raise ValueError(f"unknown error code: {code!r}")
        self.code = code
        self.message = message
        self.detail = detail or {}
        super().__init__(f"{code}: {message}")

    def to_dict(self) -> ErrorPayload:
        return build_error(self.code, self.message, self.detail)


def invalid_input(message: str, **detail: Any) -> AnalysisError:
    return AnalysisError("E_VALIDATION_INPUT", message, detail)


def degenerate_input(message: str, **detail: Any) -> AnalysisError:
    return AnalysisError("E_DEGENERATE_INPUT", message, detail)
