from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, Optional, Tuple

from ..errors import invalid_input


class TestName(str, Enum):
    __test__ = False

    WILCOXON = "wilcoxon-signed-rank"
    KS = "ks-two-sample"
    MARGINAL_HOMOGENEITY = "marginal-homogeneity"


@dataclass(frozen=True)
class TestResult:
    __test__ = False

    test: TestName
    statistic: float
    p_value: float
    n_effective: int
    two_tailed: bool = True
    notes: str = ""
    df: Optional[int] = None
    standardized: Optional[float] = None
    params: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_value <= 1.0:
            raise invalid_input("p-value must lie in [0, 1]", p_value=self.p_value)


@dataclass(frozen=True)
class CcdfPoints:
    points: Tuple[Tuple[int, float], ...]

    def __iter__(self) -> Iterator[Tuple[int, float]]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.points)

    @property
    def probabilities(self) -> Tuple[float, ...]:
        return tuple(p for _, p in self.points)


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    xmin: int
    n_tail: int
    sigma: float
    method: str = "approx"


def clamp_probability(value: float) -> float:
    return min(1.0, max(0.0, float(value)))
