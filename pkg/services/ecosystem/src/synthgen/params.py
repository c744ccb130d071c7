from __future__ import annotations

from typing import Any, Dict

try:
    from pydantic.v1 import BaseModel, Field, ValidationError, root_validator, validator
except ImportError:  # pragma: no cover - pydantic v1 fallback
    from pydantic import BaseModel, Field, ValidationError, root_validator, validator

from ..errors import invalid_input


class SynthParams(BaseModel):
    """Generator settings for a coupled physical/virtual network.

    The defaults are calibrated so the ecosystem-over-physical global
    efficiency gain lands near 30% with costs 1/2/3. Cross links are on by
    default; pass ``p_cross=0`` for the plain four-step generator, e.g. the
    exact mirror with p_website = p_mirror = 1 and extra_vv = 0.
    """

    n_physical: int = Field(200, ge=1)
    attach_m: int = Field(2, ge=1)
    p_website: float = 0.35
    p_mirror: float = 0.7
    p_cross: float = 0.3
    extra_vv: float = Field(0.5, ge=0.0)
    seed: int = Field(0, ge=0)

    class Config:
        extra = "forbid"
        allow_mutation = False

    @validator("p_website", "p_mirror", "p_cross")
    def _probability(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ValueError("probability must lie in [0, 1]")
        return value

    @root_validator(skip_on_failure=True)
    def _attachment_fits(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if values["attach_m"] >= values["n_physical"]:
            raise ValueError("attach_m must be smaller than n_physical")
        return values


def build_params(**values: Any) -> SynthParams:
    """SynthParams from keyword values, with failures mapped to E_VALIDATION_INPUT."""
    try:
        return SynthParams(**{key: value for key, value in values.items() if value is not None})
    except ValidationError as exc:
        errors = [
            {"loc": ".".join(str(part) for part in err["loc"]), "msg": err["msg"], "type": err["type"]}
            for err in exc.errors()
        ]
        raise invalid_input("invalid generator parameters", errors=errors) from exc
