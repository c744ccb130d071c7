from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..errors import degenerate_input, invalid_input

Pair = Tuple[float, float]

DEFAULT_BINS = 5


@dataclass(frozen=True, eq=False)
class PairedTable:
    """k x k counts; rows index cat(x), columns index cat(y)."""

    counts: np.ndarray
    boundaries: Tuple[float, ...]

    @property
    def k(self) -> int:
        return int(self.counts.shape[0])

    def to_lists(self):
        return self.counts.astype(int).tolist()


def bin_paired(pairs: Sequence[Pair], k: int = DEFAULT_BINS) -> PairedTable:
    """Categorize both members of each pair by the pooled k-quantiles.

    Intervals are right-closed: a value equal to a cut point falls in the lower
    category.
    """
    if k < 2:
        raise invalid_input("bin count must be at least 2", k=k)
    array = np.asarray(list(pairs), dtype=float)
    if array.size == 0:
        raise degenerate_input("binning needs at least one pair")
    if array.ndim != 2 or array.shape[1] != 2:
        raise invalid_input("pairs must be (x, y) tuples")
    pooled = array.ravel()
    distinct = int(np.unique(pooled).size)
    if distinct < k:
        raise degenerate_input(
            "too few distinct pooled values for the requested bin count",
            k=k,
            distinct=distinct,
        )
    cuts = np.quantile(pooled, np.arange(1, k) / k)
    rows = np.searchsorted(cuts, array[:, 0], side="left")
    cols = np.searchsorted(cuts, array[:, 1], side="left")
    counts = np.zeros((k, k), dtype=np.int64)
    np.add.at(counts, (rows, cols), 1)
    return PairedTable(counts=counts, boundaries=tuple(float(cut) for cut in cuts))
