"""Seeded generator of coupled physical/virtual networks.

Steps, all drawn from one ``numpy.random.Generator`` seeded with ``params.seed``:

1. physical layer by preferential attachment from a clique of ``attach_m + 1``
   nodes, each newcomer linking to ``attach_m`` distinct nodes with probability
   proportional to degree + 1;
2. each physical node owns a virtual twin with probability ``p_website``,
   joined to it by a coupling edge;
3. each physical edge whose endpoints both own twins is mirrored between the
   twins with probability ``p_mirror``;
4. for each physical edge (a, b) where b owns a twin, a links to twin(b) with
   probability ``p_cross``, and symmetrically (skipped entirely when
   ``p_cross`` is 0, so the random stream matches the generator without it);
5. ``round(extra_vv * n_virtual)`` further virtual-virtual edges sampled
   uniformly among the virtual non-edges.
"""

from __future__ import annotations

import math
from typing import Dict, List, Set, Tuple

import numpy as np

from .params import SynthParams
from ..graph.models import EcosystemGraph, EdgeKey, NodeKind, NodeRecord, edge_key
from ..graph.validate import parse_graph


def physical_id(index: int, width: int) -> str:
    return f"p{index:0{width}d}"


def twin_id(physical: str) -> str:
    return "v" + physical[1:]


def generate_coupled(params: SynthParams) -> EcosystemGraph:
    rng = np.random.default_rng(params.seed)
    n = params.n_physical
    width = max(4, len(str(n - 1)))
    ids = [physical_id(idx, width) for idx in range(n)]

    edges: Set[EdgeKey] = set()
    physical_edges = _preferential_attachment(n, params.attach_m, rng)
    for a, b in physical_edges:
        edges.add(edge_key(ids[a], ids[b]))

    owns_twin = rng.random(n) < params.p_website
    twins: Dict[str, str] = {ids[idx]: twin_id(ids[idx]) for idx in range(n) if owns_twin[idx]}
    for owner, twin in twins.items():
        edges.add(edge_key(owner, twin))

    for a, b in physical_edges:
        if owns_twin[a] and owns_twin[b] and rng.random() < params.p_mirror:
            edges.add(edge_key(twins[ids[a]], twins[ids[b]]))

    if params.p_cross > 0:
        for a, b in physical_edges:
            if owns_twin[b] and rng.random() < params.p_cross:
                edges.add(edge_key(ids[a], twins[ids[b]]))
            if owns_twin[a] and rng.random() < params.p_cross:
                edges.add(edge_key(ids[b], twins[ids[a]]))

    virtual_ids = sorted(twins.values())
    wanted = int(math.floor(params.extra_vv * len(virtual_ids) + 0.5))
    if wanted > 0:
        candidates = [
            (u, v)
            for i, u in enumerate(virtual_ids)
            for v in virtual_ids[i + 1 :]
            if (u, v) not in edges
        ]
        if candidates:
            picks = rng.choice(len(candidates), size=min(wanted, len(candidates)), replace=False)
            for pick in sorted(int(p) for p in picks):
                edges.add(candidates[pick])

    nodes = [NodeRecord(node_id, NodeKind.PHYSICAL) for node_id in ids]
    nodes.extend(NodeRecord(node_id, NodeKind.VIRTUAL) for node_id in virtual_ids)
    return parse_graph(nodes, sorted(edges))


def _preferential_attachment(n: int, attach_m: int, rng: np.random.Generator) -> List[Tuple[int, int]]:
    """Edge list (older, newer) in creation order."""
    seed_size = attach_m + 1
    degrees = np.zeros(n, dtype=float)
    created: List[Tuple[int, int]] = []
    for j in range(seed_size):
        for i in range(j):
            created.append((i, j))
    degrees[:seed_size] = seed_size - 1
    for newcomer in range(seed_size, n):
        weights = degrees[:newcomer] + 1.0
        targets = rng.choice(newcomer, size=attach_m, replace=False, p=weights / weights.sum())
        for target in sorted(int(t) for t in targets):
            created.append((target, newcomer))
            degrees[target] += 1.0
        degrees[newcomer] = attach_m
    return created
