from __future__ import annotations

import numpy as np

from .dcsbm import _block_counts
from .models import VARIANTS, MixingMatrix, ModularityScore, Partition
from ..errors import degenerate_input, invalid_input
from ..graph.models import EcosystemGraph


def mixing_matrix(graph: EcosystemGraph, partition: Partition) -> MixingMatrix:
    partition.require_covers(graph)
    if graph.number_of_edges == 0:
        raise degenerate_input("mixing matrix is undefined on an edgeless graph")
    block, _ = _block_counts(graph, partition)
    e = block / (2.0 * graph.number_of_edges)
    return MixingMatrix(e=e, a=e.sum(axis=1))


def modularity(mixing: MixingMatrix, variant: str = "standard") -> float:
    if variant not in VARIANTS:
        raise invalid_input(f"unknown modularity variant {variant!r}", variants=list(VARIANTS))
    inside = np.diag(mixing.e)
    if variant == "standard":
        return float(np.sum(inside - mixing.a ** 2))
    # Squared deviation of each group from its expected share.
    return float(np.sum((inside - mixing.a) ** 2))


def normalized_modularity(q: float, m: int) -> float:
    if m < 2:
        raise invalid_input("normalized modularity needs at least two groups", m=m)
    return m / (m - 1) * q


def score_modularity(
    graph: EcosystemGraph, partition: Partition, variant: str = "standard"
) -> ModularityScore:
    q = modularity(mixing_matrix(graph, partition), variant)
    q_norm = normalized_modularity(q, partition.m) if partition.m >= 2 else None
    return ModularityScore(q=q, q_norm=q_norm, m=partition.m, variant=variant)
