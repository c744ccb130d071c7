"""Command-line entry point: ``python -m services.ecosystem.src.main <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, TypeVar

from .config.pipeline import PipelineConfig, load_config_file, merge_config
from .config.runtime import default_output_dir, default_workers, get_runtime_paths
from .errors import AnalysisError
from .graph import NodeKind, write_network
from .pipeline.reporter import ProgressReporter
from .pipeline.runner import (
    StageError,
    analyze_communities,
    analyze_degree,
    analyze_efficiency,
    analyze_tests,
    eloc_samples,
    load_graph,
    run_pipeline,
    stage_seeds,
)
from .pipeline.stages import Stage
from .storage import (
    COMPOSITION_FILE,
    ELOC_CDF_FILE,
    ELOC_PAIRS_FILE,
    PARTITION_FILE,
    OutputSet,
    ccdf_file,
    ccdf_rows,
    composition_rows,
    eloc_cdf_rows,
    eloc_pair_rows,
    partition_rows,
)
from .synthgen import build_params, generate_coupled

COMMANDS = ("analyze", "communities", "efficiency", "degree", "tests", "synth")
_SYNTH_FLAGS = ("n_physical", "attach_m", "p_website", "p_mirror", "p_cross", "extra_vv")

T = TypeVar("T")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML file whose keys mirror the long flags")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", type=Path)
    common.add_argument("--workers", type=int)
    common.add_argument("--progress", action="store_true", default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    generator = argparse.ArgumentParser(add_help=False)
    generator.add_argument("--n-physical", dest="n_physical", type=int)
    generator.add_argument("--attach-m", dest="attach_m", type=int)
    generator.add_argument("--p-website", dest="p_website", type=float)
    generator.add_argument("--p-mirror", dest="p_mirror", type=float)
    generator.add_argument("--p-cross", dest="p_cross", type=float)
    generator.add_argument("--extra-vv", dest="extra_vv", type=float)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--nodes", type=Path)
    source.add_argument("--edges", type=Path)
    source.add_argument("--synth", action="store_true", help="analyze a generated network")
    source.add_argument("--synth-seed", dest="synth_seed", type=int)
    source.add_argument("--largest-component", dest="largest_component", action="store_true", default=None)
    source.add_argument("--scheme", help="edge costs vv,vp,pp (default 1,2,3)")
    source.add_argument("--groups", type=int)
    source.add_argument("--sweep", help="group-count range lo..hi")
    source.add_argument("--restarts", type=int)
    source.add_argument("--bins", type=int)
    source.add_argument("--xmin", type=int)

    parser = argparse.ArgumentParser(
        prog="ecosystem",
        description="Two-layer (physical/virtual) business ecosystem network analysis.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS[:-1]:
        sub = subparsers.add_parser(name, parents=[common, source, generator])
        if name == "degree":
            sub.add_argument("--kind", choices=("physical", "virtual", "all"), default="all")
    subparsers.add_parser("synth", parents=[common, generator])
    return parser


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    file_values: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    flags: Dict[str, Any] = {
        key: getattr(args, key, None)
        for key in (
            "nodes",
            "edges",
            "scheme",
            "groups",
            "sweep",
            "restarts",
            "seed",
            "bins",
            "xmin",
            "out",
            "workers",
            "largest_component",
            "progress",
        )
    }
    synth = {key: getattr(args, key, None) for key in _SYNTH_FLAGS}
    if getattr(args, "synth_seed", None) is not None:
        synth["seed"] = args.synth_seed
    synth = {key: value for key, value in synth.items() if value is not None}
    if getattr(args, "synth", False) or synth:
        flags["synth"] = synth
    if flags["workers"] is None and "workers" not in file_values:
        flags["workers"] = default_workers()
    return merge_config(file_values, flags)


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = sys.stdout) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "synth":
            return _cmd_synth(args, stdout)
        config = config_from_args(args)
    except AnalysisError as exc:
        print(f"error {exc.code}: {exc.message}", file=sys.stderr)
        return 2

    log_path = get_runtime_paths().logs_dir / "pipeline.log"
    with ProgressReporter(log_path=log_path, verbose=args.verbose) as reporter:
        reporter.log(f"[cli] {args.command}")
        try:
            handler = _HANDLERS[args.command]
            handler(config, reporter, args, stdout)
        except StageError as exc:
            reporter.log("[error] " + json.dumps(exc.to_dict(), sort_keys=True, default=str))
            print(f"error {exc}", file=sys.stderr)
            return 1
    return 0


def _out_dir(config: PipelineConfig) -> Path:
    return Path(config.out) if config.out is not None else default_output_dir()


def _staged(stage: Stage, outputs: Optional[OutputSet], action: Callable[[], T]) -> T:
    try:
        return action()
    except AnalysisError as exc:
        if outputs is not None:
            outputs.cleanup()
        raise StageError(stage, exc) from exc


def _cmd_analyze(config: PipelineConfig, reporter: ProgressReporter, args: argparse.Namespace, stdout: TextIO) -> None:
    report = run_pipeline(config, reporter)
    eff = report.efficiency
    print(f"wrote {_out_dir(config) / 'report.json'}", file=stdout)
    print(
        f"m={report.communities.m} gini={report.communities.gini:.3f} "
        f"E_glob physical={eff.e_glob_physical:.3f} ecosystem={eff.e_glob_ecosystem:.3f} "
        f"difference={eff.difference_percent}%",
        file=stdout,
    )


def _cmd_communities(config: PipelineConfig, reporter: ProgressReporter, args: argparse.Namespace, stdout: TextIO) -> None:
    outputs = OutputSet(_out_dir(config))
    graph = _staged(Stage.LOADING, None, lambda: load_graph(config))
    seed = stage_seeds(config)["communities"]
    reporter.stage(Stage.COMMUNITIES, 0.2, "blockmodel fit")
    result = _staged(Stage.COMMUNITIES, None, lambda: analyze_communities(graph, config, seed, reporter))

    def write() -> None:
        outputs.write_csv(PARTITION_FILE, ("node_id", "group"), partition_rows(result.partition))
        outputs.write_csv(
            COMPOSITION_FILE,
            ("group", "size", "physical", "virtual", "virtual_fraction"),
            composition_rows(result.composition),
        )

    _staged(Stage.WRITING, outputs, write)
    section = result.section
    for entry in section.modularity:
        print(f"{entry.variant:<14} Q={entry.q:.4f} Q_norm={entry.q_norm:.4f}", file=stdout)
    print(f"groups={section.m} sizes={section.sizes} virtual_fractions="
          + "[" + ", ".join(f"{value:.2f}" for value in section.virtual_fractions) + "]"
          + f" mean={section.mean_virtual_fraction:.3f} gini={section.gini:.3f}", file=stdout)


def _cmd_efficiency(config: PipelineConfig, reporter: ProgressReporter, args: argparse.Namespace, stdout: TextIO) -> None:
    outputs = OutputSet(_out_dir(config))
    graph = _staged(Stage.LOADING, None, lambda: load_graph(config))
    reporter.stage(Stage.EFFICIENCY, 0.6, "shortest paths")
    comparison = _staged(Stage.EFFICIENCY, None, lambda: analyze_efficiency(graph, config))

    def write() -> None:
        outputs.write_csv(
            ELOC_PAIRS_FILE,
            ("node_id", "e_loc_physical", "e_loc_ecosystem"),
            eloc_pair_rows(comparison),
        )
        outputs.write_csv(ELOC_CDF_FILE, ("scope", "e_loc", "p"), eloc_cdf_rows(eloc_samples(comparison)))

    _staged(Stage.WRITING, outputs, write)
    print(efficiency_table(comparison.physical.e_glob, comparison.ecosystem.e_glob, comparison.difference_percent), file=stdout)


def efficiency_table(physical: float, ecosystem: float, percent: int) -> str:
    rows = [
        f"{'':<18}{'Physical':>10}{'Ecosystem':>11}{'Difference':>12}",
        f"{'Global efficiency':<18}{physical:>10.3f}{ecosystem:>11.3f}{str(percent) + '%':>12}",
    ]
    return "\n".join(rows)


def _cmd_degree(config: PipelineConfig, reporter: ProgressReporter, args: argparse.Namespace, stdout: TextIO) -> None:
    outputs = OutputSet(_out_dir(config))
    graph = _staged(Stage.LOADING, None, lambda: load_graph(config))
    reporter.stage(Stage.DEGREE, 0.1, "degree distributions")
    section, points = _staged(Stage.DEGREE, None, lambda: analyze_degree(graph, config.xmin))
    kinds: List[str] = [kind.value for kind in NodeKind] if args.kind == "all" else [args.kind]

    def write() -> None:
        for kind in kinds:
            kind_points = points[kind]
            outputs.write_csv(ccdf_file(kind), ("k", "p"), ccdf_rows(kind_points) if kind_points else [])

    _staged(Stage.WRITING, outputs, write)
    for kind in kinds:
        scope = getattr(section, kind)
        if scope.fit is None:
            print(f"{kind}: nodes={scope.nodes} no fit ({scope.note})", file=stdout)
        else:
            print(
                f"{kind}: nodes={scope.nodes} alpha={scope.fit.alpha:.3f} "
                f"sigma={scope.fit.sigma:.3f} xmin={scope.fit.xmin} n_tail={scope.fit.n_tail}"
                + (f" alpha_exact={scope.fit_exact.alpha:.3f}" if scope.fit_exact is not None else ""),
                file=stdout,
            )


def _cmd_tests(config: PipelineConfig, reporter: ProgressReporter, args: argparse.Namespace, stdout: TextIO) -> None:
    graph = _staged(Stage.LOADING, None, lambda: load_graph(config))
    reporter.stage(Stage.EFFICIENCY, 0.6, "shortest paths")
    comparison = _staged(Stage.EFFICIENCY, None, lambda: analyze_efficiency(graph, config))
    reporter.stage(Stage.TESTS, 0.85, "local efficiency tests")
    sections = _staged(Stage.TESTS, None, lambda: analyze_tests(comparison, config.bins))
    for section in sections:
        if section.status != "ok":
            print(f"{section.test:<22} skipped ({section.notes})", file=stdout)
            continue
        line = f"{section.test:<22} statistic={section.statistic:.3f} p={section.p_value:.3f}"
        if section.standardized is not None:
            line += f" standardized={section.standardized:.3f}"
        print(line, file=stdout)


def _cmd_synth(args: argparse.Namespace, stdout: TextIO) -> int:
    values: Dict[str, Any] = {}
    if args.config:
        file_values = load_config_file(args.config)
        nested = file_values.get("synth")
        if isinstance(nested, dict):
            values.update(nested)
        if args.out is None and file_values.get("out") is not None:
            args.out = file_values["out"]
    values.update({key: getattr(args, key) for key in _SYNTH_FLAGS if getattr(args, key) is not None})
    if args.seed is not None:
        values["seed"] = args.seed
    params = build_params(**values)
    out_dir = Path(args.out) if args.out is not None else default_output_dir()
    graph = generate_coupled(params)
    try:
        write_network(graph, out_dir / "nodes.csv", out_dir / "edges.csv")
    except OSError as exc:
        print(f"error E_IO_WRITE: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out_dir / 'nodes.csv'} and {out_dir / 'edges.csv'} ({graph!r})", file=stdout)
    return 0


_HANDLERS: Dict[str, Callable[[PipelineConfig, ProgressReporter, argparse.Namespace, TextIO], None]] = {
    "analyze": _cmd_analyze,
    "communities": _cmd_communities,
    "efficiency": _cmd_efficiency,
    "degree": _cmd_degree,
    "tests": _cmd_tests,
}


if __name__ == "__main__":
    sys.exit(main())
