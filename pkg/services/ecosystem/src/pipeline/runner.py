from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .report import (
    AnalysisReport,
    CommunitySection,
    DegreeKindSection,
    DegreeSection,
    EfficiencySection,
    ElocPairEntry,
    GraphSummary,
    MixingSection,
    ModularityEntry,
    PowerLawSection,
    SweepEntry,
    TestSection,
)
from .reporter import ProgressReporter
from .stages import STAGE_PROGRESS, Stage
from ..communities import (
    CompositionReport,
    Partition,
    composition,
    dcsbm_objective,
    fit_dcsbm,
    mixing_matrix,
    modularity,
    normalized_modularity,
    select_row,
    sweep_group_count,
)
from ..communities.models import VARIANTS
from ..config.pipeline import PipelineConfig, derive_seed
from ..config.runtime import default_output_dir
from ..efficiency import ComparisonReport, compare_components
from ..errors import AnalysisError
from ..graph import (
    EcosystemGraph,
    IngestOptions,
    NodeKind,
    degree_sequence,
    largest_component,
    load_network,
    physical_projection,
    stable_hash,
)
from ..stats import (
    FIT_METHODS,
    CcdfPoints,
    TestName,
    TestResult,
    bin_paired,
    ccdf,
    fit_power_law,
    ks_two_sample,
    marginal_homogeneity,
    wilcoxon_signed_rank,
)
from ..storage import (
    COMPOSITION_FILE,
    ELOC_CDF_FILE,
    ELOC_PAIRS_FILE,
    PARTITION_FILE,
    REPORT_FILE,
    OutputSet,
    ccdf_file,
    ccdf_rows,
    composition_rows,
    eloc_cdf_rows,
    eloc_pair_rows,
    partition_rows,
)
from ..synthgen import generate_coupled

SWEEP_SELECTION = "sweep: max q_norm, smallest m on ties"
FIXED_SELECTION = "fixed"
_SKIPPABLE_CODES = ("E_DEGENERATE_INPUT", "E_SINGULAR")


class StageError(AnalysisError):
    def __init__(self, stage: Stage, cause: AnalysisError) -> None:
        self.stage = stage
        self.cause = cause
        detail = dict(cause.detail)
        detail["stage"] = stage.value
        super().__init__(cause.code, cause.message, detail)

    def __str__(self) -> str:
        return f"[{self.stage.value.lower()}] {self.code}: {self.message}"


@dataclass(frozen=True)
class CommunityResult:
    section: CommunitySection
    partition: Partition
    composition: CompositionReport


def stage_seeds(config: PipelineConfig) -> Dict[str, int]:
    seeds = {"communities": derive_seed(config.seed, "communities")}
    if config.synth is not None:
        seeds["synth"] = _synth_seed(config)
    return seeds


def _synth_seed(config: PipelineConfig) -> int:
    assert config.synth is not None
    if "seed" in config.synth.__fields_set__:
        return config.synth.seed
    return derive_seed(config.seed, "synth")


def load_graph(config: PipelineConfig) -> EcosystemGraph:
    if config.synth is not None:
        params = config.synth.copy(update={"seed": _synth_seed(config)})
        graph = generate_coupled(params)
        if config.largest_component:
            graph = largest_component(graph)
        return graph
    options = IngestOptions(restrict_to_largest_component=config.largest_component)
    return load_network(config.nodes, config.edges, options)


def summarize_graph(graph: EcosystemGraph, config: PipelineConfig) -> GraphSummary:
    counts = graph.count_by_kind()
    return GraphSummary(
        nodes=graph.number_of_nodes,
        edges=graph.number_of_edges,
        physical=counts[NodeKind.PHYSICAL],
        virtual=counts[NodeKind.VIRTUAL],
        digest=stable_hash(graph),
        largest_component=config.largest_component,
    )


def degree_scope(scope: str, degrees: List[int], xmin: Optional[int]) -> Tuple[DegreeKindSection, Optional[CcdfPoints]]:
    """CCDF plus approximate and exact power-law fits for one degree sample.

    Zero degrees are left out; xmin defaults to the smallest positive degree.
    A fit that cannot be made leaves its slot empty and its reason in ``note``.
    """
    positive = [degree for degree in degrees if degree > 0]
    if len(degrees) < 2 or not positive:
        note = "fewer than two nodes" if len(degrees) < 2 else "no positive degrees"
        return DegreeKindSection(scope=scope, nodes=len(degrees), note=note), None
    points = ccdf(positive)
    tail_start = xmin if xmin is not None else min(positive)
    fits: Dict[str, Optional[PowerLawSection]] = {}
    notes: List[str] = []
    for method in FIT_METHODS:
        try:
            result = fit_power_law(positive, tail_start, method=method)
        except AnalysisError as exc:
            fits[method] = None
            if exc.message not in notes:
                notes.append(exc.message)
            continue
        fits[method] = PowerLawSection(
            alpha=result.alpha,
            xmin=result.xmin,
            n_tail=result.n_tail,
            sigma=result.sigma,
            method=result.method,
        )
    section = DegreeKindSection(
        scope=scope,
        nodes=len(degrees),
        ccdf=list(points),
        fit=fits["approx"],
        fit_exact=fits["exact"],
        note="; ".join(notes),
    )
    return section, points


def analyze_degree(
    graph: EcosystemGraph, xmin: Optional[int] = None
) -> Tuple[DegreeSection, Dict[str, Optional[CcdfPoints]]]:
    physical, physical_points = degree_scope(
        "physical", degree_sequence(graph, NodeKind.PHYSICAL), xmin
    )
    virtual, virtual_points = degree_scope(
        "virtual", degree_sequence(graph, NodeKind.VIRTUAL), xmin
    )
    layer, _ = degree_scope("physical-layer", degree_sequence(physical_projection(graph)), xmin)
    section = DegreeSection(physical=physical, virtual=virtual, physical_layer=layer)
    return section, {"physical": physical_points, "virtual": virtual_points}


def analyze_communities(
    graph: EcosystemGraph,
    config: PipelineConfig,
    seed: int,
    reporter: Optional[ProgressReporter] = None,
) -> CommunityResult:
    sweep_rows: List[SweepEntry] = []
    if config.sweep is not None:
        rows = sweep_group_count(
            graph,
            config.sweep,
            seed,
            restarts=config.restarts,
            workers=config.workers,
            progress=config.progress,
        )
        for row in rows:
            sweep_rows.append(SweepEntry(m=row.m, objective=row.objective, q=row.q, q_norm=row.q_norm))
            if reporter is not None:
                reporter.log(f"[communities] m={row.m} objective={row.objective!r} q_norm={row.q_norm!r}")
        partition = select_row(rows).partition
        selection = SWEEP_SELECTION
    else:
        partition = fit_dcsbm(
            graph,
            config.group_count or 2,
            seed,
            restarts=config.restarts,
            workers=config.workers,
            progress=config.progress,
        )
        selection = FIXED_SELECTION

    mixing = mixing_matrix(graph, partition)
    entries = []
    for variant in VARIANTS:
        q = modularity(mixing, variant)
        entries.append(
            ModularityEntry(variant=variant, q=q, q_norm=normalized_modularity(q, partition.m))
        )
    report = composition(graph, partition)
    section = CommunitySection(
        m=partition.m,
        selection=selection,
        objective=dcsbm_objective(graph, partition),
        restarts=config.restarts,
        modularity=entries,
        mixing=MixingSection(**mixing.to_lists()),
        sizes=list(report.sizes),
        physical_counts=list(report.physical_counts),
        virtual_counts=list(report.virtual_counts),
        virtual_fractions=list(report.virtual_fractions),
        mean_virtual_fraction=report.mean_virtual_fraction,
        gini=report.gini,
        sweep=sweep_rows,
    )
    return CommunityResult(section=section, partition=partition, composition=report)


def analyze_efficiency(graph: EcosystemGraph, config: PipelineConfig) -> ComparisonReport:
    return compare_components(graph, config.scheme, workers=config.workers)


def efficiency_section(comparison: ComparisonReport) -> EfficiencySection:
    return EfficiencySection(
        scheme=str(comparison.ecosystem.scheme),
        e_glob_physical=comparison.physical.e_glob,
        e_glob_ecosystem=comparison.ecosystem.e_glob,
        relative_difference=comparison.relative_difference,
        difference_percent=comparison.difference_percent,
        mean_e_loc_physical=comparison.physical.mean_e_loc,
        mean_e_loc_ecosystem=comparison.ecosystem.mean_e_loc,
        pairs=[
            ElocPairEntry(node_id=node_id, physical=physical, ecosystem=ecosystem)
            for node_id, physical, ecosystem in comparison.pairs
        ],
    )


def eloc_samples(comparison: ComparisonReport) -> Dict[str, List[float]]:
    """Unpaired local-efficiency samples of the two scopes, in node-id order."""
    return {
        report.scope.value: [report.e_loc[node_id] for node_id in sorted(report.e_loc)]
        for report in (comparison.physical, comparison.ecosystem)
    }


def analyze_tests(comparison: ComparisonReport, bins: int) -> List[TestSection]:
    pairs = comparison.paired_values()
    samples = eloc_samples(comparison)
    sections = [
        _test_section(wilcoxon_signed_rank(pairs)),
        _test_section(ks_two_sample(samples["physical-only"], samples["ecosystem"])),
    ]
    try:
        sections.append(_test_section(marginal_homogeneity(bin_paired(pairs, bins))))
    except AnalysisError as exc:
        if exc.code not in _SKIPPABLE_CODES:
            raise
        sections.append(
            TestSection(
                test=TestName.MARGINAL_HOMOGENEITY.value,
                status="skipped",
                notes=exc.message,
                params=_plain({"bins": bins, "reason_code": exc.code, **exc.detail}),
            )
        )
    return sections


def _test_section(result: TestResult) -> TestSection:
    return TestSection(
        test=result.test.value,
        statistic=result.statistic,
        p_value=result.p_value,
        two_tailed=result.two_tailed,
        n_effective=result.n_effective,
        df=result.df,
        standardized=result.standardized,
        notes=result.notes,
        params=_plain(result.params),
    )


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def run_pipeline(
    config: PipelineConfig, reporter: Optional[ProgressReporter] = None
) -> AnalysisReport:
    reporter = reporter or ProgressReporter()
    outputs = OutputSet(Path(config.out) if config.out is not None else default_output_dir())
    current = Stage.LOADING
    try:
        seeds = stage_seeds(config)
        _enter(reporter, current, "reading network")
        graph = load_graph(config)
        summary = summarize_graph(graph, config)
        reporter.log(f"[loading] {graph!r} digest={summary.digest}")

        current = Stage.DEGREE
        _enter(reporter, current, "degree distributions")
        degree, points = analyze_degree(graph, config.xmin)

        current = Stage.COMMUNITIES
        _enter(reporter, current, "blockmodel fit")
        communities = analyze_communities(graph, config, seeds["communities"], reporter)
        reporter.log(
            f"[communities] m={communities.section.m} gini={communities.section.gini!r}"
        )

        current = Stage.EFFICIENCY
        _enter(reporter, current, "shortest paths")
        comparison = analyze_efficiency(graph, config)
        reporter.log(
            "[efficiency] physical={:.3f} ecosystem={:.3f} difference={}%".format(
                comparison.physical.e_glob,
                comparison.ecosystem.e_glob,
                comparison.difference_percent,
            )
        )

        current = Stage.TESTS
        _enter(reporter, current, "local efficiency tests")
        tests = analyze_tests(comparison, config.bins)

        report = AnalysisReport(
            config=config.echo(),
            seeds=seeds,
            graph=summary,
            degree=degree,
            communities=communities.section,
            efficiency=efficiency_section(comparison),
            tests=tests,
        )

        current = Stage.WRITING
        _enter(reporter, current, f"writing {outputs.out_dir}")
        for kind in ("physical", "virtual"):
            kind_points = points[kind]
            outputs.write_csv(ccdf_file(kind), ("k", "p"), ccdf_rows(kind_points) if kind_points else [])
        outputs.write_csv(
            ELOC_PAIRS_FILE,
            ("node_id", "e_loc_physical", "e_loc_ecosystem"),
            eloc_pair_rows(comparison),
        )
        outputs.write_csv(ELOC_CDF_FILE, ("scope", "e_loc", "p"), eloc_cdf_rows(eloc_samples(comparison)))
        outputs.write_csv(PARTITION_FILE, ("node_id", "group"), partition_rows(communities.partition))
        outputs.write_csv(
            COMPOSITION_FILE,
            ("group", "size", "physical", "virtual", "virtual_fraction"),
            composition_rows(communities.composition),
        )
        outputs.write_json(REPORT_FILE, report.dict(exclude_none=True))
    except AnalysisError as exc:
        _fail(reporter, outputs, current, exc)
        raise StageError(current, exc) from exc
    except OSError as exc:
        cause = AnalysisError("E_IO_WRITE", str(exc), {})
        _fail(reporter, outputs, current, cause)
        raise StageError(current, cause) from exc
    except ValueError as exc:
        cause = AnalysisError("E_VALIDATION_INPUT", str(exc), {})
        _fail(reporter, outputs, current, cause)
        raise StageError(current, cause) from exc
    except BaseException:
        outputs.cleanup()
        raise

    reporter.stage(Stage.DONE, 1.0, "done")
    return report


def _enter(reporter: ProgressReporter, stage: Stage, message: str) -> None:
    start, _ = STAGE_PROGRESS[stage]
    reporter.stage(stage, start, message)


def _fail(reporter: ProgressReporter, outputs: OutputSet, stage: Stage, exc: AnalysisError) -> None:
    outputs.cleanup()
    reporter.stage(Stage.FAILED, reporter.progress, f"{stage.value.lower()}: {exc.code}: {exc.message}")
