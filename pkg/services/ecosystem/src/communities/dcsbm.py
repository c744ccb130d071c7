"""Degree-corrected stochastic blockmodel fitting.

The objective is the unnormalized profile log-likelihood

    L = sum_rs m_rs * ln(m_rs / (kappa_r * kappa_s))

which, since every row of the block matrix sums to kappa_r, equals
``sum_rs f(m_rs) - 2 * sum_r f(kappa_r)`` with ``f(x) = x ln x``. The search
uses that second form so a candidate move only touches two rows of the block
matrix and two group degrees.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.special import xlogy
from tqdm import tqdm

from .models import Partition
from ..errors import degenerate_input, invalid_input
from ..graph.models import EcosystemGraph

_IMPROVEMENT_TOL = 1e-10


def dcsbm_objective(graph: EcosystemGraph, partition: Partition) -> float:
    partition.require_covers(graph)
    if graph.number_of_edges == 0:
        raise degenerate_input("blockmodel objective is undefined on an edgeless graph")
    block, kappa = _block_counts(graph, partition)
    total = 0.0
    for r in range(partition.m):
        for s in range(partition.m):
            count = block[r, s]
            if count > 0:
                total += count * np.log(count / (kappa[r] * kappa[s]))
    return float(total)


def fit_dcsbm(
    graph: EcosystemGraph,
    m: int,
    seed: int,
    restarts: int = 20,
    workers: int = 1,
    progress: bool = False,
) -> Partition:
    """Best partition found by Kernighan-Lin style vertex moves over random restarts."""
    if m < 2:
        raise invalid_input("group count must be at least 2", m=m)
    if restarts < 1:
        raise invalid_input("restarts must be positive", restarts=restarts)
    if m > graph.number_of_nodes:
        raise invalid_input(
            "group count exceeds node count", m=m, nodes=graph.number_of_nodes
        )
    if graph.number_of_edges == 0:
        raise degenerate_input("blockmodel fitting needs at least one edge")

    adjacency = _adjacency(graph)
    children = np.random.SeedSequence(seed).spawn(restarts)

    def run(child: np.random.SeedSequence) -> Tuple[float, np.ndarray]:
        return _single_restart(adjacency, m, np.random.default_rng(child))

    bar = tqdm(total=restarts, desc=f"dcsbm m={m}", disable=not progress, leave=False)
    results: List[Tuple[float, np.ndarray]] = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for result in pool.map(run, children):
            results.append(result)
            bar.update(1)
    bar.close()

    # Lowest restart index wins ties.
    best_objective, best_labels = results[0]
    for objective, labels in results[1:]:
        if objective > best_objective:
            best_objective, best_labels = objective, labels
    return Partition.from_labels(graph.node_ids, best_labels.tolist())


def _adjacency(graph: EcosystemGraph) -> sparse.csr_matrix:
    index = {node_id: idx for idx, node_id in enumerate(graph.node_ids)}
    rows: List[int] = []
    cols: List[int] = []
    for u, v in graph.edges:
        rows.extend((index[u], index[v]))
        cols.extend((index[v], index[u]))
    n = graph.number_of_nodes
    data = np.ones(len(rows), dtype=float)
    return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))


def _block_counts(graph: EcosystemGraph, partition: Partition) -> Tuple[np.ndarray, np.ndarray]:
    labels = np.asarray(partition.labels, dtype=int)
    onehot = np.eye(partition.m)[labels]
    node_counts = _adjacency(graph) @ onehot
    block = onehot.T @ node_counts
    return block, block.sum(axis=1)


def _f(values: np.ndarray) -> np.ndarray:
    return xlogy(values, values)


class _MoveState:
    """Incremental bookkeeping for one vertex-moving search."""

    def __init__(self, adjacency: sparse.csr_matrix, labels: np.ndarray, m: int) -> None:
        self.adjacency = adjacency
        self.m = m
        self.degrees = np.asarray(adjacency.sum(axis=1)).ravel()
        self.identity = np.eye(m)
        self.reset(labels)

    def reset(self, labels: np.ndarray) -> None:
        self.labels = labels.astype(int).copy()
        onehot = self.identity[self.labels]
        self.node_counts = np.asarray(self.adjacency @ onehot)
        self.block = onehot.T @ self.node_counts
        self.kappa = self.block.sum(axis=1)
        self.sizes = np.bincount(self.labels, minlength=self.m)

    def objective(self) -> float:
        return float(_f(self.block).sum() - 2.0 * _f(self.kappa).sum())

    def gains(self, nodes: np.ndarray) -> np.ndarray:
        """Objective change for moving each node in ``nodes`` to every group."""
        groups = self.labels[nodes]
        counts = self.node_counts[nodes]
        own = counts[np.arange(len(nodes)), groups]
        own_onehot = self.identity[groups]
        shift = self.identity[None, :, :] - own_onehot[:, None, :]

        row_r = self.block[groups]
        new_row_r = (row_r - counts)[:, None, :] + own[:, None, None] * shift
        delta_r = _f(new_row_r).sum(axis=2) - _f(row_r).sum(axis=1)[:, None]

        new_row_s = self.block[None, :, :] + counts[:, None, :] + counts[:, :, None] * shift
        delta_s = _f(new_row_s).sum(axis=2) - _f(self.block).sum(axis=1)[None, :]

        diag = np.diag(self.block)
        block_rr = diag[groups]
        overlap = (
            (_f(block_rr - 2.0 * own) - _f(block_rr))[:, None]
            + _f(diag[None, :] + 2.0 * counts)
            - _f(diag)[None, :]
            + 2.0 * (_f(row_r + own[:, None] - counts) - _f(row_r))
        )

        kappa_r = self.kappa[groups]
        degree = self.degrees[nodes]
        delta_kappa = (
            (_f(kappa_r - degree) - _f(kappa_r))[:, None]
            + _f(self.kappa[None, :] + degree[:, None])
            - _f(self.kappa)[None, :]
        )

        gains = 2.0 * (delta_r + delta_s) - overlap - 2.0 * delta_kappa
        gains[np.arange(len(nodes)), groups] = -np.inf
        return gains

    def move(self, node: int, target: int) -> None:
        source = self.labels[node]
        counts = self.node_counts[node].copy()
        step = self.identity[target] - self.identity[source]
        self.block += np.outer(step, counts) + np.outer(counts, step)
        self.kappa[source] -= self.degrees[node]
        self.kappa[target] += self.degrees[node]
        self.sizes[source] -= 1
        self.sizes[target] += 1
        self.labels[node] = target
        start, end = self.adjacency.indptr[node], self.adjacency.indptr[node + 1]
        neighbors = self.adjacency.indices[start:end]
        self.node_counts[neighbors, source] -= 1.0
        self.node_counts[neighbors, target] += 1.0

    def refill(self, group: int, candidates: np.ndarray) -> Optional[int]:
        """Reseed an emptied group with the candidate whose move costs least."""
        donors = candidates[self.sizes[self.labels[candidates]] > 1]
        if donors.size == 0:
            return None
        column = self.gains(donors)[:, group]
        chosen = int(donors[int(np.argmax(column))])
        self.move(chosen, group)
        return chosen


def _single_restart(
    adjacency: sparse.csr_matrix, m: int, rng: np.random.Generator
) -> Tuple[float, np.ndarray]:
    n = adjacency.shape[0]
    state = _MoveState(adjacency, rng.integers(0, m, size=n), m)
    everyone = np.arange(n)
    for group in range(m):
        if state.sizes[group] == 0:
            state.refill(group, everyone)
    while _kl_pass(state):
        pass
    return state.objective(), state.labels.copy()


def _kl_pass(state: _MoveState) -> bool:
    n = len(state.labels)
    start_objective = state.objective()
    best_objective = start_objective
    best_labels = state.labels.copy()
    moved = np.zeros(n, dtype=bool)
    while not moved.all():
        pending = np.flatnonzero(~moved)
        gains = state.gains(pending)
        row, target = np.unravel_index(int(np.argmax(gains)), gains.shape)
        node = int(pending[row])
        source = int(state.labels[node])
        state.move(node, int(target))
        moved[node] = True
        if state.sizes[source] == 0:
            _repair(state, source, moved)
        objective = state.objective()
        if objective > best_objective + _IMPROVEMENT_TOL:
            best_objective = objective
            best_labels = state.labels.copy()
    state.reset(best_labels)
    return best_objective > start_objective + _IMPROVEMENT_TOL


def _repair(state: _MoveState, group: int, moved: np.ndarray) -> None:
    chosen = state.refill(group, np.flatnonzero(~moved))
    if chosen is None:
        chosen = state.refill(group, np.arange(len(state.labels)))
    if chosen is not None:
        moved[chosen] = True

