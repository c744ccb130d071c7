from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List

import numpy as np

from .costs import CostScheme, assign_costs
from .paths import all_shortest_costs
from ..errors import degenerate_input, invalid_input
from ..graph.models import EcosystemGraph


class Scope(str, Enum):
    ECOSYSTEM = "ecosystem"
    PHYSICAL = "physical-only"


@dataclass(frozen=True)
class EfficiencyReport:
    e_glob: float
    e_loc: Dict[str, float] = field(compare=False)
    scheme: CostScheme
    scope: Scope

    @property
    def mean_e_loc(self) -> float:
        if not self.e_loc:
            return 0.0
        return float(np.mean([self.e_loc[node_id] for node_id in sorted(self.e_loc)]))


def global_efficiency(graph: EcosystemGraph, workers: int = 1) -> float:
    """Mean of 1/d_ij over ordered pairs i != j; unreachable pairs add 0."""
    n = graph.number_of_nodes
    if n < 2:
        raise degenerate_input("global efficiency needs at least two nodes", nodes=n)
    distances = all_shortest_costs(graph, workers=workers)
    inverse = np.zeros_like(distances)
    reachable = np.isfinite(distances) & (distances > 0)
    np.divide(1.0, distances, out=inverse, where=reachable)
    # Row sums in node order, then a sequential total.
    total = 0.0
    for row_sum in inverse.sum(axis=1):
        total += float(row_sum)
    return total / (n * (n - 1))


def local_efficiency(graph: EcosystemGraph, node_id: str) -> float:
    if node_id not in graph:
        raise invalid_input(f"unknown node {node_id!r}", node=node_id)
    neighbors = graph.neighbors(node_id)
    if len(neighbors) < 2:
        return 0.0
    return global_efficiency(graph.induced(neighbors))


def efficiency_report(
    graph: EcosystemGraph,
    scope: Scope,
    scheme: CostScheme,
    workers: int = 1,
) -> EfficiencyReport:
    weighted = assign_costs(graph, scheme)
    e_glob = global_efficiency(weighted, workers) if weighted.number_of_nodes >= 2 else 0.0
    nodes = list(weighted.node_ids)
    if workers > 1 and len(nodes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values: List[float] = list(pool.map(lambda node: local_efficiency(weighted, node), nodes))
    else:
        values = [local_efficiency(weighted, node) for node in nodes]
    return EfficiencyReport(
        e_glob=e_glob,
        e_loc=dict(zip(nodes, values)),
        scheme=scheme,
        scope=Scope(scope),
    )
