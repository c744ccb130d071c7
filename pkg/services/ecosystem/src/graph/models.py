from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

import networkx as nx

try:
    from pydantic.v1 import BaseModel
except ImportError:  # pragma: no cover - pydantic v1 fallback
    from pydantic import BaseModel

EdgeKey = Tuple[str, str]


class NodeKind(str, Enum):
    PHYSICAL = "physical"
    VIRTUAL = "virtual"

    @classmethod
    def parse(cls, token: str) -> "NodeKind":
        value = str(token).strip().lower()
        for kind in cls:
            if kind.value == value:
                return kind
        raise ValueError(f"unknown node kind {token!r}; expected physical or virtual")


@dataclass(frozen=True)
class NodeRecord:
    id: str
    kind: NodeKind
    label: Optional[str] = None


class IngestOptions(BaseModel):
    symmetrize_directed_input: bool = True
    drop_self_loops: bool = True
    restrict_to_largest_component: bool = False

    class Config:
        extra = "forbid"
        allow_mutation = False


def edge_key(u: str, v: str) -> EdgeKey:
    return (u, v) if u <= v else (v, u)


class EcosystemGraph:
    """Immutable simple undirected graph whose nodes carry a NodeKind.

    Instances are built through ``graph.validate.parse_graph`` (or the loaders),
    which enforce the structural invariants before ``_from_valid`` is reached.
    The wrapped networkx graph is frozen, so a graph can be shared freely
    between concurrent analyses.
    """

    __slots__ = ("_graph", "_node_ids", "_edges", "_has_costs")

    def __init__(self, graph: nx.Graph, has_costs: bool) -> None:
        self._graph = nx.freeze(graph)
        self._node_ids: Tuple[str, ...] = tuple(sorted(graph.nodes))
        self._edges: Tuple[EdgeKey, ...] = tuple(
            sorted(edge_key(u, v) for u, v in graph.edges)
        )
        self._has_costs = has_costs

    @classmethod
    def _from_valid(
        cls,
        nodes: Iterable[NodeRecord],
        edges: Iterable[EdgeKey],
        costs: Optional[Mapping[EdgeKey, float]] = None,
    ) -> "EcosystemGraph":
        graph = nx.Graph()
        for record in sorted(nodes, key=lambda item: item.id):
            graph.add_node(record.id, kind=record.kind, label=record.label)
        for u, v in sorted(edges):
            if costs is None:
                graph.add_edge(u, v)
            else:
                graph.add_edge(u, v, cost=float(costs[(u, v)]))
        return cls(graph, has_costs=costs is not None)

    @property
    def nx(self) -> nx.Graph:
        return self._graph

    @property
    def node_ids(self) -> Tuple[str, ...]:
        return self._node_ids

    @property
    def edges(self) -> Tuple[EdgeKey, ...]:
        return self._edges

    @property
    def has_costs(self) -> bool:
        return self._has_costs

    @property
    def number_of_nodes(self) -> int:
        return len(self._node_ids)

    @property
    def number_of_edges(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._node_ids)

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._graph

    def __iter__(self) -> Iterator[str]:
        return iter(self._node_ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EcosystemGraph):
            return NotImplemented
        return (
            self.nodes() == other.nodes()
            and self._edges == other._edges
            and self.costs() == other.costs()
        )

    def __hash__(self) -> int:
        return hash((self.nodes(), self._edges))

    def __repr__(self) -> str:
        counts = self.count_by_kind()
        return (
            f"EcosystemGraph(nodes={self.number_of_nodes}, edges={self.number_of_edges}, "
            f"physical={counts[NodeKind.PHYSICAL]}, virtual={counts[NodeKind.VIRTUAL]})"
        )

    def kind(self, node_id: str) -> NodeKind:
        return self._graph.nodes[node_id]["kind"]

    def label(self, node_id: str) -> Optional[str]:
        return self._graph.nodes[node_id].get("label")

    def nodes(self) -> Tuple[NodeRecord, ...]:
        return tuple(
            NodeRecord(node_id, self.kind(node_id), self.label(node_id))
            for node_id in self._node_ids
        )

    def ids_of_kind(self, kind: NodeKind) -> Tuple[str, ...]:
        return tuple(node_id for node_id in self._node_ids if self.kind(node_id) == kind)

    def count_by_kind(self) -> Dict[NodeKind, int]:
        counts = {kind: 0 for kind in NodeKind}
        for node_id in self._node_ids:
            counts[self.kind(node_id)] += 1
        return counts

    def neighbors(self, node_id: str) -> Tuple[str, ...]:
        return tuple(sorted(self._graph.adj[node_id]))

    def degree(self, node_id: str) -> int:
        return len(self._graph.adj[node_id])

    def cost(self, u: str, v: str) -> float:
        if not self._has_costs:
            raise KeyError("graph carries no edge costs")
        return self._graph.edges[u, v]["cost"]

    def costs(self) -> Optional[Dict[EdgeKey, float]]:
        if not self._has_costs:
            return None
        return {edge: self._graph.edges[edge]["cost"] for edge in self._edges}

    def induced(self, node_ids: Iterable[str]) -> "EcosystemGraph":
        keep = set(node_ids)
        sub = self._graph.subgraph(keep)
        graph = nx.Graph()
        graph.add_nodes_from(sorted(sub.nodes(data=True)))
        graph.add_edges_from(
            sorted((*edge_key(u, v), data) for u, v, data in sub.edges(data=True))
        )
        return EcosystemGraph(graph, has_costs=self._has_costs)

    def with_costs(self, costs: Mapping[EdgeKey, float]) -> "EcosystemGraph":
        return EcosystemGraph._from_valid(self.nodes(), self._edges, costs)
