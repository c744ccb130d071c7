from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import invalid_input
from ..graph.models import EcosystemGraph

VARIANTS = ("standard", "paper-literal")


@dataclass(frozen=True)
class Partition:
    node_ids: Tuple[str, ...]
    labels: Tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if len(self.node_ids) != len(self.labels):
            raise invalid_input("partition needs one label per node")
        if self.m < 1:
            raise invalid_input("partition needs at least one group", m=self.m)
        if len(set(self.node_ids)) != len(self.node_ids):
            raise invalid_input("partition assigns a node more than once")
        used = set(self.labels)
        if used != set(range(self.m)):
            raise invalid_input(
                "group indices must be contiguous and every group nonempty",
                m=self.m,
                used=sorted(used),
            )

    @classmethod
    def from_labels(cls, node_ids: Sequence[str], labels: Iterable[int]) -> "Partition":
        """Canonical partition: groups renumbered by first appearance over sorted ids."""
        pairs = sorted(zip(node_ids, (int(label) for label in labels)))
        remap: Dict[int, int] = {}
        for _, label in pairs:
            remap.setdefault(label, len(remap))
        return cls(
            tuple(node_id for node_id, _ in pairs),
            tuple(remap[label] for _, label in pairs),
            len(remap),
        )

    @classmethod
    def single_group(cls, graph: EcosystemGraph) -> "Partition":
        return cls(graph.node_ids, tuple(0 for _ in graph.node_ids), 1)

    def sizes(self) -> List[int]:
        counts = [0] * self.m
        for label in self.labels:
            counts[label] += 1
        return counts

    def covers(self, graph: EcosystemGraph) -> bool:
        return self.node_ids == graph.node_ids

    def require_covers(self, graph: EcosystemGraph) -> None:
        if not self.covers(graph):
            raise invalid_input("partition must cover exactly the nodes of the graph")


@dataclass(frozen=True, eq=False)
class MixingMatrix:
    e: np.ndarray
    a: np.ndarray

    @property
    def m(self) -> int:
        return int(self.e.shape[0])

    def to_lists(self) -> Dict[str, List]:
        return {"e": self.e.tolist(), "a": self.a.tolist()}


@dataclass(frozen=True)
class ModularityScore:
    q: float
    q_norm: Optional[float]
    m: int
    variant: str = "standard"


@dataclass(frozen=True)
class CompositionReport:
    sizes: Tuple[int, ...]
    virtual_counts: Tuple[int, ...]
    virtual_fractions: Tuple[float, ...]
    mean_virtual_fraction: float
    gini: float

    @property
    def physical_counts(self) -> Tuple[int, ...]:
        return tuple(size - virtual for size, virtual in zip(self.sizes, self.virtual_counts))


@dataclass(frozen=True)
class SweepRow:
    m: int
    objective: float
    q: float
    q_norm: float
    partition: Partition = field(repr=False, compare=False)
