from __future__ import annotations

from typing import List, Sequence, Tuple

from .dcsbm import dcsbm_objective, fit_dcsbm
from .models import SweepRow
from .modularity import score_modularity
from ..errors import invalid_input
from ..graph.models import EcosystemGraph


def sweep_group_count(
    graph: EcosystemGraph,
    m_range: Tuple[int, int],
    seed: int,
    restarts: int = 20,
    workers: int = 1,
    progress: bool = False,
) -> List[SweepRow]:
    lo, hi = m_range
    if lo < 2 or hi < lo or hi > graph.number_of_nodes:
        raise invalid_input(
            "group-count range must lie within [2, node count]",
            range=[lo, hi],
            nodes=graph.number_of_nodes,
        )
    rows: List[SweepRow] = []
    for m in range(lo, hi + 1):
        partition = fit_dcsbm(graph, m, seed, restarts=restarts, workers=workers, progress=progress)
        score = score_modularity(graph, partition)
        rows.append(
            SweepRow(
                m=m,
                objective=dcsbm_objective(graph, partition),
                q=score.q,
                q_norm=score.q_norm if score.q_norm is not None else 0.0,
                partition=partition,
            )
        )
    return rows


def select_row(rows: Sequence[SweepRow]) -> SweepRow:
    """Row with the largest normalized modularity; the smallest m wins ties."""
    if not rows:
        raise invalid_input("no sweep rows to select from")
    best = rows[0]
    for row in rows[1:]:
        if row.q_norm > best.q_norm:
            best = row
    return best
