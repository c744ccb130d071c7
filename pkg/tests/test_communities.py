import itertools
import math
import sys
import unittest
from pathlib import Path

import numpy as np
from scipy.stats import entropy

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from services.ecosystem.src.communities import (
    Partition,
    composition,
    dcsbm_objective,
    fit_dcsbm,
    gini,
    mixing_matrix,
    modularity,
    normalized_modularity,
    score_modularity,
    select_row,
    sweep_group_count,
)
from services.ecosystem.src.errors import AnalysisError
from services.ecosystem.src.graph import EcosystemGraph, NodeKind, NodeRecord, parse_graph


def _node(idx: int) -> str:
    return f"n{idx:02d}"


def _graph(n: int, edges, virtual=()) -> EcosystemGraph:
    virtual = set(virtual)
    nodes = [
        NodeRecord(_node(idx), NodeKind.VIRTUAL if idx in virtual else NodeKind.PHYSICAL)
        for idx in range(n)
    ]
    return parse_graph(nodes, [(_node(u), _node(v)) for u, v in edges])


def _base_two_triangles() -> EcosystemGraph:
    return _graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def _planted_split() -> Partition:
    return Partition.from_labels([_node(idx) for idx in range(6)], [0, 0, 0, 1, 1, 1])


def _random_graph(rng: np.random.Generator, n: int, p: float) -> EcosystemGraph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    if not edges:
        edges = [(0, 1)]
    return _graph(n, edges)


def _enumerated_maximum(graph: EcosystemGraph) -> float:
    ids = graph.node_ids
    best = -math.inf
    # Node 0 stays in group 0; every other node picks a side.
    for rest in itertools.product((0, 1), repeat=len(ids) - 1):
        labels = (0,) + rest
        if len(set(labels)) < 2:
            continue
        best = max(best, dcsbm_objective(graph, Partition.from_labels(ids, labels)))
    return best


def _planted_blocks(seed: int):
    rng = np.random.default_rng(seed)
    n = 64
    blocks = np.repeat([0, 1], n // 2)
    theta = rng.uniform(0.6, 1.6, size=n)
    for block in (0, 1):
        members = blocks == block
        theta[members] /= theta[members].mean()
    omega = np.array([[0.34, 0.02], [0.02, 0.34]])
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < min(1.0, theta[u] * theta[v] * omega[blocks[u], blocks[v]]):
            edges.append((u, v))
    return _graph(n, edges), blocks


def _nmi(first, second) -> float:
    first = np.asarray(first)
    second = np.asarray(second)
    joint = np.zeros((first.max() + 1, second.max() + 1))
    for a, b in zip(first, second):
        joint[a, b] += 1
    joint /= joint.sum()
    h_first = entropy(joint.sum(axis=1))
    h_second = entropy(joint.sum(axis=0))
    h_joint = entropy(joint.ravel())
    mutual = h_first + h_second - h_joint
    return 2.0 * mutual / (h_first + h_second)


class TestObjective(unittest.TestCase):
    def test_single_edge_values(self):
        graph = _graph(2, [(0, 1)])
        together = Partition.single_group(graph)
        apart = Partition.from_labels(graph.node_ids, [0, 1])
        self.assertAlmostEqual(dcsbm_objective(graph, together), 2 * math.log(0.5), places=12)
        self.assertEqual(dcsbm_objective(graph, apart), 0.0)

    def test_two_triangles(self):
        graph = _base_two_triangles()
        planted = dcsbm_objective(graph, _planted_split())
        merged = dcsbm_objective(graph, Partition.single_group(graph))
        self.assertAlmostEqual(planted, 12 * math.log(1 / 6), places=10)
        self.assertAlmostEqual(merged, 12 * math.log(1 / 12), places=10)
        self.assertAlmostEqual(planted, _enumerated_maximum(graph), places=10)

    def test_objective_ignores_group_labels(self):
        graph = _random_graph(np.random.default_rng(3), 8, 0.4)
        labels = [0, 1, 2, 0, 1, 2, 0, 1]
        swapped = [{0: 2, 1: 0, 2: 1}[label] for label in labels]
        first = Partition(graph.node_ids, tuple(labels), 3)
        second = Partition(graph.node_ids, tuple(swapped), 3)
        self.assertAlmostEqual(dcsbm_objective(graph, first), dcsbm_objective(graph, second), places=12)

    def test_edgeless_graph_is_rejected(self):
        graph = _graph(3, [])
        with self.assertRaises(AnalysisError):
            dcsbm_objective(graph, Partition.single_group(graph))


class TestFitDcsbm(unittest.TestCase):
    def test_two_triangles_are_recovered(self):
        graph = _base_two_triangles()
        partition = fit_dcsbm(graph, 2, seed=1, restarts=5)
        self.assertEqual(partition, _planted_split())
        self.assertAlmostEqual(dcsbm_objective(graph, partition), 12 * math.log(1 / 6), places=10)

    def test_complete_graph_reaches_enumerated_maximum(self):
        graph = _graph(4, itertools.combinations(range(4), 2))
        partition = fit_dcsbm(graph, 2, seed=5, restarts=20)
        self.assertAlmostEqual(dcsbm_objective(graph, partition), _enumerated_maximum(graph), places=10)

    def test_small_graphs_reach_enumerated_maximum(self):
        rng = np.random.default_rng(2024)
        for case in range(10):
            graph = _random_graph(rng, int(rng.integers(5, 9)), 0.4)
            with self.subTest(case=case):
                partition = fit_dcsbm(graph, 2, seed=case, restarts=20)
                self.assertAlmostEqual(
                    dcsbm_objective(graph, partition), _enumerated_maximum(graph), places=9
                )

    def test_planted_blocks_are_recovered(self):
        hits = 0
        for seed in range(10):
            graph, blocks = _planted_blocks(seed)
            partition = fit_dcsbm(graph, 2, seed=seed, restarts=10)
            if _nmi(blocks, partition.labels) >= 0.9:
                hits += 1
        self.assertGreaterEqual(hits, 9)

    def test_fit_is_reproducible_across_workers(self):
        graph = _random_graph(np.random.default_rng(8), 30, 0.15)
        first = fit_dcsbm(graph, 3, seed=42, restarts=6)
        again = fit_dcsbm(graph, 3, seed=42, restarts=6)
        threaded = fit_dcsbm(graph, 3, seed=42, restarts=6, workers=4)
        self.assertEqual(first, again)
        self.assertEqual(first, threaded)
        self.assertEqual(first.m, 3)

    def test_preconditions(self):
        with self.assertRaises(AnalysisError):
            fit_dcsbm(_graph(1, []), 2, seed=0)
        with self.assertRaises(AnalysisError):
            fit_dcsbm(_graph(4, []), 2, seed=0)
        with self.assertRaises(AnalysisError):
            fit_dcsbm(_base_two_triangles(), 7, seed=0)
        with self.assertRaises(AnalysisError):
            fit_dcsbm(_base_two_triangles(), 1, seed=0)


class TestModularity(unittest.TestCase):
    def test_planted_split_mixing_and_scores(self):
        graph = _base_two_triangles()
        mixing = mixing_matrix(graph, _planted_split())
        self.assertEqual(mixing.e.tolist(), [[0.5, 0.0], [0.0, 0.5]])
        self.assertEqual(mixing.a.tolist(), [0.5, 0.5])
        q = modularity(mixing)
        self.assertEqual(q, 0.5)
        self.assertEqual(normalized_modularity(q, 2), 1.0)
        self.assertEqual(modularity(mixing, "paper-literal"), 0.0)

    def test_single_edge_across_groups(self):
        graph = _graph(2, [(0, 1)])
        mixing = mixing_matrix(graph, Partition.from_labels(graph.node_ids, [0, 1]))
        self.assertEqual(mixing.e.tolist(), [[0.0, 0.5], [0.5, 0.0]])

    def test_one_group_has_zero_modularity(self):
        rng = np.random.default_rng(11)
        for case in range(20):
            graph = _random_graph(rng, int(rng.integers(3, 25)), 0.3)
            with self.subTest(case=case):
                mixing = mixing_matrix(graph, Partition.single_group(graph))
                self.assertEqual(mixing.e.tolist(), [[1.0]])
                self.assertEqual(modularity(mixing), 0.0)

    def test_mixing_matrix_invariants(self):
        rng = np.random.default_rng(12)
        for case in range(10):
            graph = _random_graph(rng, 20, 0.2)
            labels = [idx % 3 for idx in range(20)]
            partition = Partition.from_labels(graph.node_ids, labels)
            mixing = mixing_matrix(graph, partition)
            with self.subTest(case=case):
                np.testing.assert_allclose(mixing.e, mixing.e.T)
                self.assertAlmostEqual(float(mixing.e.sum()), 1.0, places=12)
                np.testing.assert_allclose(mixing.a, mixing.e.sum(axis=1))
                self.assertLess(modularity(mixing), 1.0)

    def test_normalized_modularity_arithmetic(self):
        self.assertAlmostEqual(normalized_modularity(0.45, 10), 0.5, places=12)
        with self.assertRaises(AnalysisError):
            normalized_modularity(0.3, 1)

    def test_score_of_single_group_has_no_normalized_value(self):
        graph = _base_two_triangles()
        score = score_modularity(graph, Partition.single_group(graph))
        self.assertEqual(score.q, 0.0)
        self.assertIsNone(score.q_norm)

    def test_unknown_variant(self):
        graph = _base_two_triangles()
        with self.assertRaises(AnalysisError):
            modularity(mixing_matrix(graph, _planted_split()), "fancy")


class TestComposition(unittest.TestCase):
    def test_mixed_and_physical_groups(self):
        graph = _graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)], virtual={0, 1})
        partition = Partition.from_labels(graph.node_ids, [0, 0, 0, 0, 1, 1, 1])
        report = composition(graph, partition)
        self.assertEqual(report.virtual_fractions, (0.5, 0.0))
        self.assertEqual(report.mean_virtual_fraction, 0.25)
        self.assertEqual(report.sizes, (4, 3))
        self.assertEqual(report.physical_counts, (2, 3))

    def test_even_mix_is_uniform(self):
        graph = _graph(4, [(0, 1), (2, 3)], virtual={1, 3})
        report = composition(graph, Partition.from_labels(graph.node_ids, [0, 0, 1, 1]))
        self.assertEqual(report.virtual_fractions, (0.5, 0.5))
        self.assertEqual(report.gini, 0.0)

    def test_all_physical_graph(self):
        graph = _base_two_triangles()
        report = composition(graph, _planted_split())
        self.assertEqual(report.virtual_fractions, (0.0, 0.0))
        self.assertEqual(report.gini, 0.0)


class TestGini(unittest.TestCase):
    def test_fixtures(self):
        self.assertEqual(gini([1, 0, 0, 0]), 0.75)
        self.assertAlmostEqual(gini([1, 2, 3]), 2 / 9, places=15)
        self.assertEqual(gini([0.4, 0.4, 0.4]), 0.0)
        self.assertEqual(gini([0, 0]), 0.0)

    def test_matches_pairwise_oracle(self):
        rng = np.random.default_rng(99)
        for case in range(100):
            values = rng.random(int(rng.integers(1, 30)))
            n = values.size
            oracle = np.abs(values[:, None] - values[None, :]).sum() / (2 * n * values.sum())
            with self.subTest(case=case):
                self.assertAlmostEqual(gini(values), float(oracle), delta=1e-12)

    def test_scale_and_permutation_invariance(self):
        values = [0.1, 0.7, 0.3, 0.9]
        self.assertAlmostEqual(gini(values), gini([3 * value for value in values]), places=12)
        self.assertAlmostEqual(gini(values), gini(list(reversed(values))), places=12)

    def test_invalid_input(self):
        with self.assertRaises(AnalysisError):
            gini([])
        with self.assertRaises(AnalysisError):
            gini([0.2, -0.1])


class TestSweep(unittest.TestCase):
    def test_two_triangles_sweep(self):
        graph = _base_two_triangles()
        rows = sweep_group_count(graph, (2, 3), seed=4, restarts=5)
        self.assertEqual([row.m for row in rows], [2, 3])
        self.assertEqual(rows[0].q_norm, 1.0)
        self.assertEqual(select_row(rows).m, 2)

    def test_single_row_range(self):
        rows = sweep_group_count(_base_two_triangles(), (2, 2), seed=0, restarts=3)
        self.assertEqual(len(rows), 1)

    def test_range_beyond_node_count(self):
        with self.assertRaises(AnalysisError):
            sweep_group_count(_base_two_triangles(), (2, 7), seed=0)


if __name__ == "__main__":
    unittest.main()
