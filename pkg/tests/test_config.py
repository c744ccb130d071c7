import sys
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from services.ecosystem.src.config.pipeline import (
    ConfigValidationError,
    derive_seed,
    load_config_file,
    merge_config,
)
from services.ecosystem.src.efficiency import CostScheme

FIXTURE_DIR = ROOT / "tests" / "fixtures" / "small_ecosystem"


def _base_files() -> dict:
    return {"nodes": Path("n.csv"), "edges": Path("e.csv")}


class TestPipelineConfig(unittest.TestCase):
    def test_fixture_file_resolves_relative_paths(self):
        values = load_config_file(FIXTURE_DIR / "analyze.yaml")
        self.assertEqual(values["nodes"], FIXTURE_DIR / "nodes.csv")
        config = merge_config(values, {})
        self.assertEqual(config.scheme, CostScheme())
        self.assertEqual(config.group_count, 2)
        self.assertEqual(config.restarts, 5)
        self.assertEqual(config.bins, 3)

    def test_flags_override_file_values(self):
        config = merge_config({**_base_files(), "seed": 1, "restarts": 4}, {"seed": 9, "restarts": None})
        self.assertEqual(config.seed, 9)
        self.assertEqual(config.restarts, 4)

    def test_group_flag_replaces_file_sweep(self):
        config = merge_config({**_base_files(), "sweep": "2..5"}, {"groups": 3})
        self.assertIsNone(config.sweep)
        self.assertEqual(config.group_count, 3)
        swept = merge_config({**_base_files(), "groups": 3}, {"sweep": "2..5"})
        self.assertEqual(swept.sweep, (2, 5))
        self.assertIsNone(swept.group_count)

    def test_scheme_string(self):
        config = merge_config(_base_files(), {"scheme": "1,1.5,2"})
        self.assertEqual(config.scheme.as_tuple(), (1.0, 1.5, 2.0))

    def test_dashed_keys_and_nested_synth(self):
        with TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / "run.yaml"
            path.write_text(
                "synth:\n  n-physical: 80\n  p-cross: 0.1\nlargest-component: true\nout: results\n",
                encoding="utf-8",
            )
            values = load_config_file(path)
            self.assertEqual(values["out"], Path(temp_dir) / "results")
            config = merge_config(values, {"synth": {"seed": 4}})
            self.assertEqual(config.synth.n_physical, 80)
            self.assertEqual(config.synth.p_cross, 0.1)
            self.assertEqual(config.synth.seed, 4)
            self.assertTrue(config.largest_component)

    def test_invalid_configurations(self):
        cases = [
            {},
            {"nodes": Path("n.csv")},
            {**_base_files(), "synth": {}},
            {**_base_files(), "groups": 1},
            {**_base_files(), "sweep": "5..2"},
            {**_base_files(), "sweep": "2-5"},
            {**_base_files(), "scheme": "1,2"},
            {**_base_files(), "workers": 0},
            {**_base_files(), "colour": "red"},
        ]
        for values in cases:
            with self.subTest(values=values):
                with self.assertRaises(ConfigValidationError) as ctx:
                    merge_config(values, {})
                self.assertEqual(ctx.exception.code, "E_VALIDATION_INPUT")
                self.assertTrue(str(ctx.exception).startswith("E_VALIDATION_INPUT: config validation failed"))

    def test_unreadable_or_malformed_file(self):
        with TemporaryDirectory() as temp_dir:
            with self.assertRaises(ConfigValidationError):
                load_config_file(Path(temp_dir) / "missing.yaml")
            broken = Path(temp_dir) / "broken.yaml"
            broken.write_text("nodes: [unclosed\n", encoding="utf-8")
            with self.assertRaises(ConfigValidationError):
                load_config_file(broken)
            listing = Path(temp_dir) / "list.yaml"
            listing.write_text("- nodes\n- edges\n", encoding="utf-8")
            with self.assertRaises(ConfigValidationError):
                load_config_file(listing)

    def test_echo_leaves_out_execution_settings(self):
        config = merge_config(_base_files(), {"out": Path("/tmp/x"), "workers": 4, "progress": True})
        echo = config.echo()
        for key in ("out", "workers", "progress"):
            self.assertNotIn(key, echo)
        self.assertEqual(echo["nodes"], "n.csv")
        self.assertEqual(echo["groups"], 2)
        self.assertEqual(echo["scheme"], "1.0,2.0,3.0")

    def test_echo_omits_derived_generator_seed(self):
        derived = merge_config(None, {"synth": {"n_physical": 50}, "seed": 5}).echo()
        self.assertEqual(derived["synth"]["n_physical"], 50)
        self.assertNotIn("seed", derived["synth"])
        self.assertEqual(derived["seed"], 5)
        pinned = merge_config(None, {"synth": {"n_physical": 50, "seed": 9}}).echo()
        self.assertEqual(pinned["synth"]["seed"], 9)

    def test_derived_seeds(self):
        self.assertEqual(derive_seed(42, "communities"), derive_seed(42, "communities"))
        self.assertNotEqual(derive_seed(42, "communities"), derive_seed(42, "synth"))
        self.assertNotEqual(derive_seed(42, "communities"), derive_seed(43, "communities"))
        self.assertLess(derive_seed(0, "synth"), 2 ** 32)


if __name__ == "__main__":
    unittest.main()
