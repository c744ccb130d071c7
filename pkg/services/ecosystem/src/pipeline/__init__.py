from .report import SCHEMA_VERSION, AnalysisReport, report_schema
from .reporter import ProgressReporter
from .runner import StageError, run_pipeline
from .stages import Stage

__all__ = [
    "SCHEMA_VERSION",
    "AnalysisReport",
    "ProgressReporter",
    "Stage",
    "StageError",
    "report_schema",
    "run_pipeline",
]
