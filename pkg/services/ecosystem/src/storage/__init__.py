from .outputs import (
    COMPOSITION_FILE,
    ELOC_CDF_FILE,
    ELOC_PAIRS_FILE,
    PARTITION_FILE,
    REPORT_FILE,
    OutputSet,
    ccdf_file,
    ccdf_rows,
    composition_rows,
    csv_text,
    dump_json,
    eloc_cdf_rows,
    eloc_pair_rows,
    partition_rows,
)

__all__ = [
    "COMPOSITION_FILE",
    "ELOC_CDF_FILE",
    "ELOC_PAIRS_FILE",
    "PARTITION_FILE",
    "REPORT_FILE",
    "OutputSet",
    "ccdf_file",
    "ccdf_rows",
    "composition_rows",
    "csv_text",
    "dump_json",
    "eloc_cdf_rows",
    "eloc_pair_rows",
    "partition_rows",
]
