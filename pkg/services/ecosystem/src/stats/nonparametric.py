from __future__ import annotations

import math
from typing import Iterable, Sequence, Tuple

import numpy as np
from scipy.special import kolmogorov
from scipy.stats import norm, rankdata

from .models import TestName, TestResult, clamp_probability
from ..errors import degenerate_input, invalid_input

WILCOXON_METHODS = ("approx", "edgeworth", "exact")
EXACT_LIMIT = 50

Pair = Tuple[float, float]


def _differences(pairs: Iterable[Pair]) -> np.ndarray:
    array = np.asarray(list(pairs), dtype=float)
    if array.size == 0:
        raise degenerate_input("signed-rank test needs at least one pair")
    if array.ndim != 2 or array.shape[1] != 2:
        raise invalid_input("pairs must be (x, y) tuples")
    return array[:, 1] - array[:, 0]


def wilcoxon_signed_rank(
    pairs: Sequence[Pair],
    correction: bool = False,
    method: str = "approx",
) -> TestResult:
    """Two-tailed Wilcoxon signed-rank test on d = y - x.

    Zero differences are dropped and tied |d| share mid-ranks. Z > 0 means y
    tends to exceed x. ``correction`` shrinks |W+ - mean| by one half before
    standardizing. ``method="edgeworth"`` adds the fourth-cumulant term to the
    continuity-corrected normal tail; ``method="exact"`` uses the exact null
    distribution of W+. Z is reported the same way in every method.
    """
    if method not in WILCOXON_METHODS:
        raise invalid_input(f"unknown signed-rank method {method!r}", methods=list(WILCOXON_METHODS))
    d = _differences(pairs)
    zeros = int(np.sum(d == 0))
    nonzero = d[d != 0]
    n = int(nonzero.size)
    params = {"method": method, "continuity_correction": correction, "zeros_dropped": zeros}
    if n == 0:
        return TestResult(
            test=TestName.WILCOXON,
            statistic=0.0,
            p_value=1.0,
            n_effective=0,
            notes="all differences are zero",
            params=params,
        )

    ranks = rankdata(np.abs(nonzero))
    w_plus = float(np.sum(ranks[nonzero > 0]))
    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - float(np.sum(tie_counts ** 3 - tie_counts)) / 48.0
    shift = w_plus - mean
    if correction:
        shift = math.copysign(max(abs(shift) - 0.5, 0.0), shift)
    z = shift / math.sqrt(variance) if variance > 0 else 0.0

    if method == "exact":
        p_value = _exact_two_tailed(ranks, w_plus)
    elif method == "edgeworth":
        p_value = _edgeworth_two_tailed(ranks, w_plus)
    else:
        p_value = 2.0 * float(norm.sf(abs(z)))

    notes = f"{zeros} zero differences dropped; mid-ranks for ties"
    params["w_plus"] = w_plus
    return TestResult(
        test=TestName.WILCOXON,
        statistic=z,
        p_value=clamp_probability(p_value),
        n_effective=n,
        notes=notes,
        params=params,
    )


def wilcoxon_exact_pvalue(pairs: Sequence[Pair]) -> float:
    d = _differences(pairs)
    nonzero = d[d != 0]
    if nonzero.size == 0:
        return 1.0
    ranks = rankdata(np.abs(nonzero))
    return clamp_probability(_exact_two_tailed(ranks, float(np.sum(ranks[nonzero > 0]))))


def _edgeworth_two_tailed(ranks: np.ndarray, w_plus: float) -> float:
    # W+ is a sum of independent r_i * Bernoulli(1/2): variance sum(r^2)/4,
    # fourth cumulant -sum(r^4)/8, odd cumulants zero.
    variance = float(np.sum(ranks ** 2)) / 4.0
    excess = -float(np.sum(ranks ** 4)) / 8.0 / variance ** 2
    shift = max(abs(w_plus - float(np.sum(ranks)) / 2.0) - 0.5, 0.0)
    z = shift / math.sqrt(variance)
    tail = float(norm.sf(z)) + float(norm.pdf(z)) * excess / 24.0 * (z ** 3 - 3.0 * z)
    return min(1.0, max(0.0, 2.0 * tail))


def _exact_two_tailed(ranks: np.ndarray, w_plus: float) -> float:
    n = ranks.size
    if n > EXACT_LIMIT:
        raise invalid_input("exact signed-rank p-values are limited to small samples", n=n, limit=EXACT_LIMIT)
    # Mid-ranks are multiples of 1/2, so doubled ranks index the null distribution.
    doubled = np.rint(2.0 * ranks).astype(np.int64)
    counts = np.zeros(int(doubled.sum()) + 1)
    counts[0] = 1.0
    for rank in doubled:
        shifted = np.zeros_like(counts)
        shifted[rank:] = counts[: counts.size - rank]
        counts = counts + shifted
    probabilities = counts / counts.sum()
    observed = int(round(2.0 * w_plus))
    lower = float(probabilities[: observed + 1].sum())
    upper = float(probabilities[observed:].sum())
    return min(1.0, 2.0 * min(lower, upper))


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Two-sample Kolmogorov-Smirnov D with the asymptotic two-tailed p-value."""
    first = np.sort(np.asarray(list(a), dtype=float))
    second = np.sort(np.asarray(list(b), dtype=float))
    if first.size == 0 or second.size == 0:
        raise degenerate_input("KS test needs two nonempty samples", n_a=int(first.size), n_b=int(second.size))
    pooled = np.concatenate([first, second])
    cdf_a = np.searchsorted(first, pooled, side="right") / first.size
    cdf_b = np.searchsorted(second, pooled, side="right") / second.size
    d = float(np.max(np.abs(cdf_a - cdf_b)))
    n_e = first.size * second.size / (first.size + second.size)
    p_value = 1.0 if d == 0.0 else float(kolmogorov(math.sqrt(n_e) * d))
    return TestResult(
        test=TestName.KS,
        statistic=d,
        p_value=clamp_probability(p_value),
        n_effective=int(first.size + second.size),
        notes="asymptotic Kolmogorov distribution",
        params={"n_a": int(first.size), "n_b": int(second.size), "n_e": n_e},
    )
