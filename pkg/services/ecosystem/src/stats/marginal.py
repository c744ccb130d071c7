from __future__ import annotations

import math
from typing import Any, Dict, Sequence, Union

import numpy as np
from scipy.stats import chi2

from .binning import PairedTable
from .models import TestName, TestResult, clamp_probability
from ..errors import AnalysisError, degenerate_input, invalid_input

Table = Union[PairedTable, np.ndarray, Sequence[Sequence[float]]]


def marginal_homogeneity(table: Table) -> TestResult:
    """Stuart-Maxwell test of row/column marginal equality in a paired table.

    Categories with empty row and column margins are dropped first. The result
    also carries a signed ordinal statistic, positive when the column
    classification sits in higher categories than the row one; for 2 x 2
    tables it is (b - c) / sqrt(b + c).
    """
    params: Dict[str, Any] = {}
    if isinstance(table, PairedTable):
        params["boundaries"] = list(table.boundaries)
        params["bins"] = table.k
        table = table.counts
    counts = np.asarray(table, dtype=float)
    if counts.ndim != 2 or counts.shape[0] != counts.shape[1] or counts.shape[0] < 2:
        raise invalid_input("marginal homogeneity needs a square table with k >= 2", shape=list(counts.shape))
    if np.any(counts < 0):
        raise invalid_input("table counts must be nonnegative")
    total = float(counts.sum())
    if total < 1:
        raise degenerate_input("marginal homogeneity needs at least one observation")

    rows = counts.sum(axis=1)
    cols = counts.sum(axis=0)
    kept = np.flatnonzero(rows + cols > 0)
    dropped = [int(idx) for idx in np.flatnonzero(rows + cols == 0)]
    if dropped:
        params["dropped_categories"] = dropped
    counts = counts[np.ix_(kept, kept)]
    rows, cols = rows[kept], cols[kept]
    df = int(kept.size) - 1
    notes = f"dropped empty categories {dropped}" if dropped else ""

    scores = kept.astype(float)
    numerator = float(np.sum(scores * (cols - rows)))
    spread = (scores[:, None] - scores[None, :]) ** 2
    denominator = float(np.sum(spread * counts))
    standardized = numerator / math.sqrt(denominator) if denominator > 0 else 0.0

    d = (rows - cols)[:df]
    if df == 0 or not np.any(rows != cols):
        return TestResult(
            test=TestName.MARGINAL_HOMOGENEITY,
            statistic=0.0,
            p_value=1.0,
            n_effective=int(total),
            notes=notes or "marginals identical",
            df=df,
            standardized=standardized,
            params=params,
        )

    size = df
    covariance = -(counts[:size, :size] + counts[:size, :size].T)
    np.fill_diagonal(covariance, rows[:size] + cols[:size] - 2.0 * np.diag(counts)[:size])
    if np.linalg.matrix_rank(covariance) < size:
        off_diagonal = rows + cols - 2.0 * np.diag(counts)
        degenerate = [int(kept[idx]) for idx in np.flatnonzero(off_diagonal == 0)]
        raise AnalysisError(
            "E_SINGULAR",
            "marginal homogeneity covariance is singular",
            {"categories": degenerate},
        )
    statistic = float(d @ np.linalg.solve(covariance, d))
    return TestResult(
        test=TestName.MARGINAL_HOMOGENEITY,
        statistic=statistic,
        p_value=clamp_probability(chi2.sf(statistic, df)),
        n_effective=int(total),
        notes=notes,
        df=df,
        standardized=standardized,
        params=params,
    )
