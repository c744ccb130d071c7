from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import dijkstra

from ..errors import invalid_input
from ..graph.models import EcosystemGraph


def cost_matrix(graph: EcosystemGraph) -> sparse.csr_matrix:
    """Symmetric sparse cost matrix over ``graph.node_ids``."""
    if not graph.has_costs:
        raise invalid_input("graph carries no edge costs; assign a cost scheme first")
    index = {node_id: idx for idx, node_id in enumerate(graph.node_ids)}
    rows: List[int] = []
    cols: List[int] = []
    data: List[float] = []
    for u, v in graph.edges:
        cost = graph.cost(u, v)
        rows.extend((index[u], index[v]))
        cols.extend((index[v], index[u]))
        data.extend((cost, cost))
    n = graph.number_of_nodes
    return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))


def shortest_costs_from(graph: EcosystemGraph, source: str) -> Dict[str, float]:
    if source not in graph:
        raise invalid_input(f"unknown source node {source!r}", node=source)
    row = graph.node_ids.index(source)
    distances = dijkstra(cost_matrix(graph), directed=False, indices=row)
    return {node_id: float(distances[idx]) for idx, node_id in enumerate(graph.node_ids)}


def all_shortest_costs(graph: EcosystemGraph, workers: int = 1) -> np.ndarray:
    """All-pairs distance matrix, rows and columns in ``graph.node_ids`` order.

    Unreachable pairs hold ``inf``. Sources are split into contiguous chunks and
    the chunk results are stacked in source order, so the matrix does not
    depend on the worker count.
    """
    matrix = cost_matrix(graph)
    n = graph.number_of_nodes
    if n == 0:
        return np.zeros((0, 0))
    chunks = [chunk for chunk in np.array_split(np.arange(n), max(1, min(workers, n))) if chunk.size]
    if len(chunks) == 1:
        return dijkstra(matrix, directed=False)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(lambda chunk: dijkstra(matrix, directed=False, indices=chunk), chunks))
    return np.vstack(parts)
