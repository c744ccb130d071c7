from __future__ import annotations

import math
from typing import Dict, Tuple

try:
    from pydantic.v1 import BaseModel, ValidationError, validator
except ImportError:  # pragma: no cover - pydantic v1 fallback
    from pydantic import BaseModel, ValidationError, validator

from ..errors import invalid_input
from ..graph.models import EcosystemGraph, EdgeKey, NodeKind


class CostScheme(BaseModel):
    """Traversal cost per edge, keyed by the kinds of its endpoints."""

    vv: float = 1.0
    vp: float = 2.0
    pp: float = 3.0

    class Config:
        extra = "forbid"
        allow_mutation = False

    @validator("vv", "vp", "pp")
    def _strictly_positive(cls, value: float) -> float:
        if not math.isfinite(value) or value <= 0:
            raise ValueError("cost must be a finite positive number")
        return float(value)

    @classmethod
    def parse(cls, text: str) -> "CostScheme":
        parts = [part.strip() for part in str(text).split(",")]
        if len(parts) != 3:
            raise invalid_input("cost scheme must be three comma-separated values vv,vp,pp", value=text)
        try:
            vv, vp, pp = (float(part) for part in parts)
            return cls(vv=vv, vp=vp, pp=pp)
        except (ValueError, ValidationError) as exc:
            raise invalid_input("cost scheme values must be positive numbers", value=text) from exc

    def cost_for(self, first: NodeKind, second: NodeKind) -> float:
        if first == second:
            return self.vv if first == NodeKind.VIRTUAL else self.pp
        return self.vp

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.vv, self.vp, self.pp)

    def __str__(self) -> str:
        return ",".join(repr(value) for value in self.as_tuple())


def assign_costs(graph: EcosystemGraph, scheme: CostScheme) -> EcosystemGraph:
    costs: Dict[EdgeKey, float] = {
        (u, v): scheme.cost_for(graph.kind(u), graph.kind(v)) for u, v in graph.edges
    }
    return graph.with_costs(costs)
