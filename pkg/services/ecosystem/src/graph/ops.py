from __future__ import annotations

from typing import List, Optional

import networkx as nx

from .models import EcosystemGraph, NodeKind
from ..errors import degenerate_input


def kind_projection(graph: EcosystemGraph, kind: NodeKind) -> EcosystemGraph:
    return graph.induced(graph.ids_of_kind(kind))


def physical_projection(graph: EcosystemGraph) -> EcosystemGraph:
    return kind_projection(graph, NodeKind.PHYSICAL)


def degree_sequence(graph: EcosystemGraph, kind_filter: Optional[NodeKind] = None) -> List[int]:
    # Degrees count edges to nodes of any kind; the filter only selects rows.
    return [
        graph.degree(node_id)
        for node_id in graph.node_ids
        if kind_filter is None or graph.kind(node_id) == kind_filter
    ]


def largest_component(graph: EcosystemGraph) -> EcosystemGraph:
    if graph.number_of_nodes == 0:
        raise degenerate_input("largest component of an empty graph is undefined")
    components = [sorted(component) for component in nx.connected_components(graph.nx)]
    best = min(components, key=lambda members: (-len(members), members[0]))
    if len(best) == graph.number_of_nodes:
        return graph
    return graph.induced(best)
