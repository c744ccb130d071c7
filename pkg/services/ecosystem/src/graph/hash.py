from __future__ import annotations

import hashlib

from .io import serialize_network
from .models import EcosystemGraph


def stable_hash(graph: EcosystemGraph) -> str:
    nodes_text, edges_text = serialize_network(graph)
    digest = hashlib.sha256()
    digest.update(nodes_text.encode("utf-8"))
    digest.update(b"\0")
    digest.update(edges_text.encode("utf-8"))
    costs = graph.costs()
    if costs is not None:
        digest.update(b"\0")
        for (u, v), cost in sorted(costs.items()):
            digest.update(f"{u},{v},{cost!r}\n".encode("utf-8"))
    return f"sha256:{digest.hexdigest()}"
