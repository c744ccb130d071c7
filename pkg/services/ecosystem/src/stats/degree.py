"""Degree distributions: empirical CCDF and discrete power-law fits."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta

from .models import CcdfPoints, PowerLawFit
from ..errors import degenerate_input, invalid_input

FIT_METHODS = ("approx", "exact")

_ALPHA_LOW = 1.0 + 1e-6
_ALPHA_HIGH = 50.0
_STEP = 1e-5


def _as_degrees(values: Iterable[int]) -> np.ndarray:
    array = np.asarray(list(values), dtype=float)
    if array.size and (np.any(array < 0) or np.any(array != np.floor(array))):
        raise invalid_input("degrees must be nonnegative integers")
    return array.astype(np.int64)


def ccdf(degrees: Iterable[int]) -> CcdfPoints:
    """P(K >= k) at every distinct observed k."""
    values = _as_degrees(degrees)
    if values.size == 0:
        raise degenerate_input("ccdf of an empty degree sample is undefined")
    if np.any(values == 0):
        raise invalid_input("ccdf expects positive degrees; drop isolated nodes first")
    ks, counts = np.unique(values, return_counts=True)
    at_least = np.cumsum(counts[::-1])[::-1]
    n = values.size
    return CcdfPoints(tuple((int(k), float(c) / n) for k, c in zip(ks, at_least)))


def fit_power_law(degrees: Iterable[int], xmin: int, method: str = "approx") -> PowerLawFit:
    """Discrete power-law exponent for the tail x >= xmin.

    ``approx`` is the closed form 1 + n / sum ln(x / (xmin - 1/2)); ``exact``
    solves the discrete likelihood equation with the Hurwitz zeta function.
    Zero degrees never enter the fit.
    """
    if method not in FIT_METHODS:
        raise invalid_input(f"unknown power-law fit method {method!r}", methods=list(FIT_METHODS))
    if int(xmin) != xmin or xmin < 1:
        raise invalid_input("xmin must be a positive integer", xmin=xmin)
    xmin = int(xmin)
    values = _as_degrees(degrees)
    tail = values[values >= xmin].astype(float)
    n_tail = int(tail.size)
    if n_tail < 2:
        raise degenerate_input("power-law fit needs at least two tail observations", n_tail=n_tail, xmin=xmin)

    if method == "approx":
        alpha = 1.0 + n_tail / float(np.sum(np.log(tail / (xmin - 0.5))))
        return PowerLawFit(alpha=alpha, xmin=xmin, n_tail=n_tail, sigma=(alpha - 1.0) / math.sqrt(n_tail))

    mean_log = float(np.mean(np.log(tail)))
    if mean_log <= math.log(xmin):
        raise degenerate_input("every tail observation equals xmin; the exponent diverges", xmin=xmin)

    def score(alpha: float) -> float:
        return _dlog_zeta(alpha, xmin) + mean_log

    if score(_ALPHA_HIGH) < 0:
        raise degenerate_input("power-law exponent lies beyond the search bracket", upper=_ALPHA_HIGH)
    alpha = float(brentq(score, _ALPHA_LOW, _ALPHA_HIGH, xtol=1e-12))
    curvature = _d2log_zeta(alpha, xmin)
    sigma = 1.0 / math.sqrt(n_tail * curvature) if curvature > 0 else float("inf")
    return PowerLawFit(alpha=alpha, xmin=xmin, n_tail=n_tail, sigma=sigma, method="exact")


def _log_zeta(alpha: float, xmin: int) -> float:
    return math.log(float(zeta(alpha, xmin)))


def _dlog_zeta(alpha: float, xmin: int) -> float:
    # zeta'/zeta by central difference on log zeta
    h = _STEP * max(1.0, alpha)
    lower = max(alpha - h, 1.0 + h / 2.0)
    return (_log_zeta(alpha + h, xmin) - _log_zeta(lower, xmin)) / (alpha + h - lower)


def _d2log_zeta(alpha: float, xmin: int) -> float:
    # zeta''/zeta - (zeta'/zeta)^2
    h = 1e-4 * max(1.0, alpha)
    if alpha - h <= 1.0:
        h = (alpha - 1.0) / 2.0
    return (
        _log_zeta(alpha + h, xmin) - 2.0 * _log_zeta(alpha, xmin) + _log_zeta(alpha - h, xmin)
    ) / (h * h)
