from __future__ import annotations

from typing import Iterable, List

import numpy as np

from .models import CompositionReport, Partition
from ..errors import invalid_input
from ..graph.models import EcosystemGraph, NodeKind


def gini(values: Iterable[float]) -> float:
    """Gini coefficient sum_ij |x_i - x_j| / (2 n sum_k x_k), via the sorted form."""
    x = np.sort(np.asarray(list(values), dtype=float))
    if x.size == 0:
        raise invalid_input("gini needs at least one value")
    if np.any(x < 0):
        raise invalid_input("gini is defined for nonnegative values only")
    total = x.sum()
    if total == 0 or x[0] == x[-1]:
        return 0.0
    n = x.size
    ranks = np.arange(1, n + 1)
    return float(np.sum((2 * ranks - n - 1) * x) / (n * total))


def composition(graph: EcosystemGraph, partition: Partition) -> CompositionReport:
    partition.require_covers(graph)
    sizes = partition.sizes()
    virtual: List[int] = [0] * partition.m
    for node_id, label in zip(partition.node_ids, partition.labels):
        if graph.kind(node_id) == NodeKind.VIRTUAL:
            virtual[label] += 1
    fractions = [count / size for count, size in zip(virtual, sizes)]
    return CompositionReport(
        sizes=tuple(sizes),
        virtual_counts=tuple(virtual),
        virtual_fractions=tuple(fractions),
        mean_virtual_fraction=float(np.mean(fractions)),
        gini=gini(fractions),
    )
