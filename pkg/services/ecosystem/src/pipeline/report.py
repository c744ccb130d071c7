from __future__ import annotations

from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

if TYPE_CHECKING:
    from pydantic import BaseModel, Field
else:
    try:
        from pydantic.v1 import BaseModel, Field
    except ImportError:  # pragma: no cover - pydantic v1 fallback
        from pydantic import BaseModel, Field

SCHEMA_VERSION = "1.0"


class ReportModel(BaseModel):
    class Config:
        extra = "forbid"


class GraphSummary(ReportModel):
    nodes: int
    edges: int
    physical: int
    virtual: int
    digest: str
    largest_component: bool = False


class PowerLawSection(ReportModel):
    alpha: float
    xmin: int
    n_tail: int
    sigma: float
    method: str


class DegreeKindSection(ReportModel):
    scope: str
    nodes: int
    ccdf: List[Tuple[int, float]] = Field(default_factory=list)
    fit: Optional[PowerLawSection] = None
    fit_exact: Optional[PowerLawSection] = None
    note: str = ""


class DegreeSection(ReportModel):
    physical: DegreeKindSection
    virtual: DegreeKindSection
    physical_layer: DegreeKindSection


class ModularityEntry(ReportModel):
    variant: str
    q: float
    q_norm: Optional[float]


class SweepEntry(ReportModel):
    m: int
    objective: float
    q: float
    q_norm: float


class MixingSection(ReportModel):
    e: List[List[float]]
    a: List[float]


class CommunitySection(ReportModel):
    m: int
    selection: str
    objective: float
    restarts: int
    modularity: List[ModularityEntry]
    mixing: MixingSection
    sizes: List[int]
    physical_counts: List[int]
    virtual_counts: List[int]
    virtual_fractions: List[float]
    mean_virtual_fraction: float
    gini: float
    sweep: List[SweepEntry] = Field(default_factory=list)


class ElocPairEntry(ReportModel):
    node_id: str
    physical: float
    ecosystem: float


class EfficiencySection(ReportModel):
    scheme: str
    e_glob_physical: float
    e_glob_ecosystem: float
    relative_difference: float
    difference_percent: int
    mean_e_loc_physical: float
    mean_e_loc_ecosystem: float
    pairs: List[ElocPairEntry]


class TestSection(ReportModel):
    __test__ = False

    test: str
    status: str = "ok"
    statistic: Optional[float] = None
    p_value: Optional[float] = None
    two_tailed: bool = True
    n_effective: Optional[int] = None
    df: Optional[int] = None
    standardized: Optional[float] = None
    notes: str = ""
    params: Dict[str, Any] = Field(default_factory=dict)


class AnalysisReport(ReportModel):
    schema_version: str = SCHEMA_VERSION
    config: Dict[str, Any]
    seeds: Dict[str, int]
    graph: GraphSummary
    degree: DegreeSection
    communities: CommunitySection
    efficiency: EfficiencySection
    tests: List[TestSection]


def report_schema() -> Dict[str, Any]:
    """JSON schema of report.json, as published in docs/report_schema.json."""
    return AnalysisReport.schema()
