from __future__ import annotations

import math
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .models import EcosystemGraph, EdgeKey, NodeRecord, edge_key
from ..errors import AnalysisError


class GraphValidationError(AnalysisError):
    def __init__(self, errors: List[Dict[str, Any]], code: Optional[str] = None) -> None:
        self.errors = errors
        super().__init__(
            code or _code_for(errors),
            _format_validation_errors(errors),
            {"errors": errors},
        )


def parse_graph(
    nodes: Iterable[NodeRecord],
    edges: Iterable[Tuple[str, str]],
    costs: Optional[Mapping[EdgeKey, float]] = None,
) -> EcosystemGraph:
    node_list = list(nodes)
    edge_list = [(str(u), str(v)) for u, v in edges]
    errors = _node_errors(node_list)
    known = {record.id for record in node_list}
    errors.extend(_edge_errors(edge_list, known))
    keys = [edge_key(u, v) for u, v in edge_list]
    if costs is not None:
        errors.extend(_cost_errors(keys, costs))
    if errors:
        raise GraphValidationError(errors)
    return EcosystemGraph._from_valid(node_list, keys, costs)


def _node_errors(nodes: Sequence[NodeRecord]) -> List[Dict[str, Any]]:
    errors: List[Dict[str, Any]] = []
    seen: Set[str] = set()
    for idx, record in enumerate(nodes):
        if not record.id:
            errors.append(_error(["nodes", str(idx)], "node id must be non-empty", "value_error.id"))
            continue
        if record.id in seen:
            errors.append(
                _error(["nodes", record.id], "duplicate node id", "value_error.duplicate")
            )
        seen.add(record.id)
    return errors


def _edge_errors(edges: Sequence[Tuple[str, str]], known: Set[str]) -> List[Dict[str, Any]]:
    errors: List[Dict[str, Any]] = []
    seen: Set[EdgeKey] = set()
    for u, v in edges:
        missing = sorted({u, v} - known)
        if missing:
            errors.append(
                _error(
                    ["edges", f"{u}-{v}"],
                    "edge references undeclared node(s): " + ", ".join(missing),
                    "referential_error.missing_node",
                )
            )
            continue
        if u == v:
            errors.append(_error(["edges", f"{u}-{v}"], "self-loop", "value_error.self_loop"))
            continue
        key = edge_key(u, v)
        if key in seen:
            errors.append(
                _error(["edges", f"{u}-{v}"], "duplicate edge", "value_error.duplicate")
            )
        seen.add(key)
    return errors


def _cost_errors(keys: Sequence[EdgeKey], costs: Mapping[EdgeKey, float]) -> List[Dict[str, Any]]:
    errors: List[Dict[str, Any]] = []
    for key in keys:
        cost = costs.get(key)
        loc = ["costs", f"{key[0]}-{key[1]}"]
        if cost is None:
            errors.append(_error(loc, "edge has no cost", "value_error.missing_cost"))
        elif not math.isfinite(cost) or cost <= 0:
            errors.append(_error(loc, "edge cost must be positive", "value_error.cost"))
    return errors


def _error(loc: List[str], msg: str, type_: str) -> Dict[str, Any]:
    return {"loc": loc, "msg": msg, "type": type_}


def _code_for(errors: List[Dict[str, Any]]) -> str:
    if errors and all(entry.get("type", "").startswith("referential_error") for entry in errors):
        return "E_REFERENTIAL"
    return "E_PARSE"


def _format_validation_errors(errors: List[Dict[str, Any]]) -> str:
    if not errors:
        return "graph validation failed"
    parts: List[str] = []
    for entry in errors:
        loc = entry.get("loc") or []
        msg = entry.get("msg", "invalid value")
        if loc:
            parts.append(f"{'.'.join(loc)}: {msg}")
        else:
            parts.append(msg)
    return "graph validation failed: " + "; ".join(parts)
