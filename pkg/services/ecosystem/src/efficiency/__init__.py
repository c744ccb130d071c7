from .compare import ComparisonReport, compare_components, relative_difference, whole_percent
from .costs import CostScheme, assign_costs
from .measures import EfficiencyReport, Scope, efficiency_report, global_efficiency, local_efficiency
from .paths import all_shortest_costs, cost_matrix, shortest_costs_from

__all__ = [
    "ComparisonReport",
    "CostScheme",
    "EfficiencyReport",
    "Scope",
    "all_shortest_costs",
    "assign_costs",
    "compare_components",
    "cost_matrix",
    "efficiency_report",
    "global_efficiency",
    "local_efficiency",
    "relative_difference",
    "shortest_costs_from",
    "whole_percent",
]
