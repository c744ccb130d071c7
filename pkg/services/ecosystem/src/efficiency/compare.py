from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .costs import CostScheme
from .measures import EfficiencyReport, Scope, efficiency_report
from ..errors import degenerate_input
from ..graph.models import EcosystemGraph, NodeKind
from ..graph.ops import physical_projection

# (node_id, e_loc in the physical projection, e_loc in the ecosystem)
ElocPair = Tuple[str, float, float]


@dataclass(frozen=True)
class ComparisonReport:
    physical: EfficiencyReport
    ecosystem: EfficiencyReport
    relative_difference: float
    pairs: Tuple[ElocPair, ...]

    @property
    def difference_percent(self) -> int:
        return whole_percent(self.relative_difference)

    def paired_values(self) -> List[Tuple[float, float]]:
        return [(physical, ecosystem) for _, physical, ecosystem in self.pairs]


def whole_percent(fraction: float) -> int:
    """Half-up rounding to a whole percent, e.g. 0.305 -> 31."""
    return int(math.floor(fraction * 100.0 + 0.5))


def relative_difference(physical: float, ecosystem: float) -> float:
    if physical == 0.0:
        if ecosystem == 0.0:
            return 0.0
        raise degenerate_input(
            "relative difference is undefined when the physical efficiency is zero",
            physical=physical,
            ecosystem=ecosystem,
        )
    return (ecosystem - physical) / physical


def compare_components(
    graph: EcosystemGraph, scheme: CostScheme, workers: int = 1
) -> ComparisonReport:
    physical_ids = graph.ids_of_kind(NodeKind.PHYSICAL)
    if len(physical_ids) < 2:
        raise degenerate_input(
            "efficiency comparison needs at least two physical nodes",
            physical=len(physical_ids),
        )
    ecosystem = efficiency_report(graph, Scope.ECOSYSTEM, scheme, workers)
    physical = efficiency_report(physical_projection(graph), Scope.PHYSICAL, scheme, workers)
    pairs = tuple(
        (node_id, physical.e_loc[node_id], ecosystem.e_loc[node_id]) for node_id in physical_ids
    )
    return ComparisonReport(
        physical=physical,
        ecosystem=ecosystem,
        relative_difference=relative_difference(physical.e_glob, ecosystem.e_glob),
        pairs=pairs,
    )
