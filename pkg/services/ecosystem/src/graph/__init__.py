from .hash import stable_hash
from .io import load_network, serialize_network, write_network
from .models import EcosystemGraph, EdgeKey, IngestOptions, NodeKind, NodeRecord, edge_key
from .ops import degree_sequence, kind_projection, largest_component, physical_projection
from .validate import GraphValidationError, parse_graph

__all__ = [
    "EcosystemGraph",
    "EdgeKey",
    "GraphValidationError",
    "IngestOptions",
    "NodeKind",
    "NodeRecord",
    "degree_sequence",
    "edge_key",
    "kind_projection",
    "largest_component",
    "load_network",
    "parse_graph",
    "physical_projection",
    "serialize_network",
    "stable_hash",
    "write_network",
]
