from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from ..communities.models import CompositionReport, Partition
from ..efficiency.compare import ComparisonReport
from ..errors import AnalysisError
from ..stats.models import CcdfPoints

REPORT_FILE = "report.json"
PARTITION_FILE = "partition.csv"
COMPOSITION_FILE = "composition.csv"
ELOC_PAIRS_FILE = "eloc_pairs.csv"
ELOC_CDF_FILE = "eloc_cdf.csv"


def ccdf_file(kind: str) -> str:
    return f"ccdf_{kind}.csv"


def dump_json(payload: Mapping[str, Any]) -> str:
    return json.dumps(payload, ensure_ascii=True, indent=2, sort_keys=True) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    return value


class OutputSet:
    """Files written into one output directory, removable as a unit."""

    def __init__(self, out_dir: Path) -> None:
        self.out_dir = Path(out_dir)
        self.written: List[Path] = []
        self._created_dir = False

    def _prepare(self) -> None:
        if not self.out_dir.exists():
            try:
                self.out_dir.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise _io_error("failed to create output directory", self.out_dir, exc) from exc
            self._created_dir = True

    def write_text(self, name: str, text: str) -> Path:
        self._prepare()
        path = self.out_dir / name
        try:
            with path.open("w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        except OSError as exc:
            raise _io_error("failed to write output file", path, exc) from exc
        if path not in self.written:
            self.written.append(path)
        return path

    def write_json(self, name: str, payload: Mapping[str, Any]) -> Path:
        return self.write_text(name, dump_json(payload))

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        return self.write_text(name, csv_text(header, rows))

    def cleanup(self) -> None:
        for path in reversed(self.written):
            try:
                path.unlink()
            except FileNotFoundError:
                pass
        self.written = []
        if self._created_dir:
            try:
                self.out_dir.rmdir()
            except OSError:
                pass


def _io_error(message: str, path: Path, exc: OSError) -> AnalysisError:
    return AnalysisError("E_IO_WRITE", message, {"path": str(path), "error": str(exc)})


def ccdf_rows(points: CcdfPoints) -> List[Tuple[int, float]]:
    return list(points)


def partition_rows(partition: Partition) -> List[Tuple[str, int]]:
    return list(zip(partition.node_ids, partition.labels))


def composition_rows(report: CompositionReport) -> List[Tuple[int, int, int, int, float]]:
    return [
        (group, size, physical, virtual, fraction)
        for group, (size, physical, virtual, fraction) in enumerate(
            zip(report.sizes, report.physical_counts, report.virtual_counts, report.virtual_fractions)
        )
    ]


def eloc_pair_rows(comparison: ComparisonReport) -> List[Tuple[str, float, float]]:
    return list(comparison.pairs)


def eloc_cdf_rows(samples: Mapping[str, Sequence[float]]) -> List[Tuple[str, float, float]]:
    """Empirical P(E_loc <= value) at every distinct value, per scope."""
    rows: List[Tuple[str, float, float]] = []
    for scope in sorted(samples):
        values = sorted(float(value) for value in samples[scope])
        total = len(values)
        counts: Dict[float, int] = {}
        for value in values:
            counts[value] = counts.get(value, 0) + 1
        seen = 0
        for value in sorted(counts):
            seen += counts[value]
            rows.append((scope, value, seen / total))
    return rows
