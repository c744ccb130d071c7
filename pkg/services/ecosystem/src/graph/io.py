from __future__ import annotations

import csv
import io
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Set, TextIO, Tuple, Union

from .models import EcosystemGraph, EdgeKey, IngestOptions, NodeKind, NodeRecord, edge_key
from .ops import largest_component
from .validate import GraphValidationError, parse_graph

Source = Union[str, Path, TextIO]

NODE_HEADER = ("id", "kind", "label")
EDGE_HEADER = ("source", "target")


def load_network(
    nodes_source: Source,
    edges_source: Source,
    options: Optional[IngestOptions] = None,
) -> EcosystemGraph:
    options = options or IngestOptions()
    with _open_source(nodes_source) as handle:
        nodes = _read_nodes(handle)
    known = {record.id for record in nodes}
    with _open_source(edges_source) as handle:
        edges = _read_edges(handle, known, options)
    graph = parse_graph(nodes, edges)
    if options.restrict_to_largest_component:
        graph = largest_component(graph)
    return graph


def serialize_network(graph: EcosystemGraph) -> Tuple[str, str]:
    nodes_buffer = io.StringIO()
    writer = csv.writer(nodes_buffer, lineterminator="\n")
    writer.writerow(NODE_HEADER)
    for record in graph.nodes():
        writer.writerow([record.id, record.kind.value, record.label or ""])
    edges_buffer = io.StringIO()
    writer = csv.writer(edges_buffer, lineterminator="\n")
    writer.writerow(EDGE_HEADER)
    for u, v in graph.edges:
        writer.writerow([u, v])
    return nodes_buffer.getvalue(), edges_buffer.getvalue()


def write_network(graph: EcosystemGraph, nodes_path: Path, edges_path: Path) -> None:
    nodes_text, edges_text = serialize_network(graph)
    for path, text in ((Path(nodes_path), nodes_text), (Path(edges_path), edges_text)):
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(text)


@contextmanager
def _open_source(source: Source) -> Iterator[TextIO]:
    if isinstance(source, (str, Path)):
        with Path(source).open("r", encoding="utf-8", newline="") as handle:
            yield handle
    else:
        yield source


def _data_rows(handle: TextIO) -> Iterator[Tuple[int, List[str]]]:
    lines: List[Tuple[int, str]] = []
    for lineno, line in enumerate(handle, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, line))
    for (lineno, _), row in zip(lines, csv.reader(line for _, line in lines)):
        yield lineno, [cell.strip() for cell in row]


def _is_header(row: List[str], header: Tuple[str, ...]) -> bool:
    size = min(len(row), 2)
    return [cell.lower() for cell in row[:size]] == list(header[:size])


def _read_nodes(handle: TextIO) -> List[NodeRecord]:
    nodes: List[NodeRecord] = []
    errors: List[Dict[str, Any]] = []
    first = True
    for lineno, row in _data_rows(handle):
        if first and _is_header(row, NODE_HEADER):
            first = False
            continue
        first = False
        loc = ["nodes", f"row {lineno}"]
        if len(row) < 2 or not row[0]:
            errors.append(_error(loc, "expected id,kind[,label]", "parse_error.columns"))
            continue
        try:
            kind = NodeKind.parse(row[1])
        except ValueError as exc:
            errors.append(_error(loc, str(exc), "parse_error.kind"))
            continue
        label = row[2] if len(row) > 2 and row[2] else None
        nodes.append(NodeRecord(row[0], kind, label))
    if errors:
        raise GraphValidationError(errors, code="E_PARSE")
    if not nodes:
        raise GraphValidationError(
            [_error(["nodes"], "node file declares no nodes", "parse_error.empty")],
            code="E_PARSE",
        )
    return nodes


def _read_edges(
    handle: TextIO,
    known: Set[str],
    options: IngestOptions,
) -> List[EdgeKey]:
    directed: Set[Tuple[str, str]] = set()
    errors: List[Dict[str, Any]] = []
    first = True
    for lineno, row in _data_rows(handle):
        if first and _is_header(row, EDGE_HEADER):
            first = False
            continue
        first = False
        loc = ["edges", f"row {lineno}"]
        if len(row) < 2 or not row[0] or not row[1]:
            errors.append(_error(loc, "expected source,target", "parse_error.columns"))
            continue
        u, v = row[0], row[1]
        missing = sorted({u, v} - known)
        if missing:
            errors.append(
                _error(
                    loc,
                    "edge references undeclared node(s): " + ", ".join(missing),
                    "referential_error.missing_node",
                )
            )
            continue
        if u == v and options.drop_self_loops:
            continue
        directed.add((u, v))
    if errors:
        raise GraphValidationError(errors)
    if not options.symmetrize_directed_input:
        reversed_pairs = sorted(
            (u, v) for u, v in directed if u < v and (v, u) in directed
        )
        if reversed_pairs:
            raise GraphValidationError(
                [
                    _error(
                        ["edges", f"{u}-{v}"],
                        "directed pair given in both orientations while symmetrization is disabled",
                        "parse_error.directed",
                    )
                    for u, v in reversed_pairs
                ],
                code="E_PARSE",
            )
    return sorted({edge_key(u, v) for u, v in directed})


def _error(loc: List[str], msg: str, type_: str) -> Dict[str, Any]:
    return {"loc": loc, "msg": msg, "type": type_}
