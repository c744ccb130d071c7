import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from services.ecosystem.src.efficiency import CostScheme, compare_components
from services.ecosystem.src.errors import AnalysisError
from services.ecosystem.src.graph import (
    NodeKind,
    degree_sequence,
    kind_projection,
    physical_projection,
    serialize_network,
)
from services.ecosystem.src.stats import fit_power_law, wilcoxon_signed_rank
from services.ecosystem.src.synthgen import SynthParams, build_params, generate_coupled, twin_id

CALIBRATION_SEEDS = range(10)


def _base_params(**overrides) -> SynthParams:
    values = {"n_physical": 40, "attach_m": 2, "seed": 3}
    values.update(overrides)
    return build_params(**values)


class TestGenerateCoupled(unittest.TestCase):
    def test_no_websites_gives_physical_graph(self):
        graph = generate_coupled(_base_params(p_website=0.0))
        self.assertEqual(graph.ids_of_kind(NodeKind.VIRTUAL), ())
        self.assertEqual(graph.number_of_nodes, 40)
        # Seed triangle plus two edges per newcomer.
        self.assertEqual(graph.number_of_edges, 3 + 2 * 37)

    def test_full_mirror(self):
        graph = generate_coupled(
            _base_params(p_website=1.0, p_mirror=1.0, extra_vv=0.0, p_cross=0.0)
        )
        physical = physical_projection(graph)
        virtual = kind_projection(graph, NodeKind.VIRTUAL)
        self.assertEqual(virtual.number_of_nodes, 40)
        mirrored = sorted((twin_id(u), twin_id(v)) for u, v in physical.edges)
        self.assertEqual(list(virtual.edges), mirrored)
        coupling = graph.number_of_edges - physical.number_of_edges - virtual.number_of_edges
        self.assertEqual(coupling, 40)
        for node_id in physical.node_ids:
            self.assertIn(twin_id(node_id), graph.neighbors(node_id))

    def test_mirror_settings_keep_default_cross_links(self):
        plain = generate_coupled(_base_params(p_website=1.0, p_mirror=1.0, extra_vv=0.0, p_cross=0.0))
        crossed = generate_coupled(_base_params(p_website=1.0, p_mirror=1.0, extra_vv=0.0))
        physical = physical_projection(crossed)
        links = [
            (u, v)
            for u, v in crossed.edges
            if crossed.kind(u) != crossed.kind(v)
        ]
        coupling = [(u, v) for u, v in links if twin_id(u) == v or twin_id(v) == u]
        self.assertEqual(len(coupling), 40)
        self.assertGreater(len(links), 40)
        for u, v in links:
            owner, twin = (u, v) if crossed.kind(u) == NodeKind.PHYSICAL else (v, u)
            if twin_id(owner) != twin:
                self.assertIn("p" + twin[1:], physical.neighbors(owner))
        # Cross links draw after the mirror step, so the mirrored layer is unchanged.
        self.assertEqual(
            list(kind_projection(crossed, NodeKind.VIRTUAL).edges),
            list(kind_projection(plain, NodeKind.VIRTUAL).edges),
        )

    def test_node_ids(self):
        graph = generate_coupled(_base_params(p_website=1.0))
        self.assertEqual(graph.node_ids[0], "p0000")
        self.assertIn("v0039", graph)
        self.assertEqual(twin_id("p0012"), "v0012")

    def test_extra_virtual_edges_are_added(self):
        sparse = generate_coupled(_base_params(p_website=1.0, p_mirror=0.0, p_cross=0.0, extra_vv=0.0))
        dense = generate_coupled(_base_params(p_website=1.0, p_mirror=0.0, p_cross=0.0, extra_vv=0.5))
        self.assertEqual(kind_projection(sparse, NodeKind.VIRTUAL).number_of_edges, 0)
        self.assertEqual(kind_projection(dense, NodeKind.VIRTUAL).number_of_edges, 20)

    def test_same_seed_is_byte_identical(self):
        first = serialize_network(generate_coupled(_base_params(seed=9)))
        second = serialize_network(generate_coupled(_base_params(seed=9)))
        other = serialize_network(generate_coupled(_base_params(seed=10)))
        self.assertEqual(first, second)
        self.assertNotEqual(first, other)

    def test_invalid_params(self):
        for overrides in ({"p_website": 1.5}, {"attach_m": 40}, {"extra_vv": -1.0}, {"n_physical": 0}):
            with self.subTest(overrides=overrides):
                with self.assertRaises(AnalysisError) as ctx:
                    _base_params(**overrides)
                self.assertEqual(ctx.exception.code, "E_VALIDATION_INPUT")
        with self.assertRaises(AnalysisError):
            build_params(color="red")


class TestCalibratedDefaults(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.graphs = [generate_coupled(build_params(seed=seed)) for seed in CALIBRATION_SEEDS]
        cls.reports = [compare_components(graph, CostScheme()) for graph in cls.graphs]

    def test_ecosystem_global_efficiency_exceeds_physical(self):
        gains = [report.relative_difference for report in self.reports]
        self.assertTrue(all(report.ecosystem.e_glob > report.physical.e_glob for report in self.reports))
        self.assertGreaterEqual(sum(1 for gain in gains if 0.15 <= gain <= 0.45), 8)

    def test_local_efficiency_shifts_upwards(self):
        hits = 0
        for report in self.reports:
            result = wilcoxon_signed_rank(report.paired_values())
            if result.statistic > 0 and result.p_value < 0.05:
                hits += 1
        self.assertGreaterEqual(hits, 8)

    def test_physical_layer_is_scale_free(self):
        hits = 0
        for graph in self.graphs:
            fit = fit_power_law(degree_sequence(physical_projection(graph)), xmin=4)
            if 2.5 <= fit.alpha <= 3.5:
                hits += 1
        self.assertGreaterEqual(hits, 9)


if __name__ == "__main__":
    unittest.main()
