from .composition import composition, gini
from .dcsbm import dcsbm_objective, fit_dcsbm
from .models import CompositionReport, MixingMatrix, ModularityScore, Partition, SweepRow
from .modularity import mixing_matrix, modularity, normalized_modularity, score_modularity
from .sweep import select_row, sweep_group_count

__all__ = [
    "CompositionReport",
    "MixingMatrix",
    "ModularityScore",
    "Partition",
    "SweepRow",
    "composition",
    "dcsbm_objective",
    "fit_dcsbm",
    "gini",
    "mixing_matrix",
    "modularity",
    "normalized_modularity",
    "score_modularity",
    "select_row",
    "sweep_group_count",
]
