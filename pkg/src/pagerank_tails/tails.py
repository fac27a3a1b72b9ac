"""Empirical tail analysis: CCDFs, Hill estimates, and bound-ratio reports.

All counting uses the strict tail P(X > k).  The two report types mirror the
two sides of the degree/PageRank comparison:

* ``ratio_bound_report`` -- the lower-bound side: how does the PageRank tail
  compare to the degree tail at a rescaled threshold beta*k?
* ``condition_probe`` -- the sufficient condition for that lower bound: among
  roots of degree above k, how often do almost all neighbors (a fraction
  >= 1 - epsilon) have degree at least alpha?  The lower bound is expected
  when this ratio decays in k; the circulant-union construction keeps it
  pinned at 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySampleError, InsufficientSampleError

__all__ = [
    "TailReport",
    "HillEstimate",
    "RatioReport",
    "ConditionProbe",
    "empirical_ccdf",
    "hill_estimator",
    "ratio_bound_report",
    "condition_probe",
]


def _tail_counts(values: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """#{x : x > k} for each threshold k, via one sort and searchsorted."""
    ordered = np.sort(values)
    return values.size - np.searchsorted(ordered, thresholds, side="right")


def _default_grid(values: np.ndarray) -> np.ndarray:
    return np.arange(0, math.floor(float(values.max())) + 1, dtype=np.float64)


@dataclass(frozen=True)
class TailReport:
    """Empirical strict CCDF of one sample on a threshold grid."""

    thresholds: np.ndarray
    counts: np.ndarray
    n: int

    @property
    def ccdf(self) -> np.ndarray:
        return self.counts / self.n

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("k,ccdf,count\n")
            for k, p, c in zip(self.thresholds, self.ccdf, self.counts):
                fh.write(f"{k!r},{p!r},{int(c)}\n")

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "thresholds": [float(k) for k in self.thresholds],
            "ccdf": [float(p) for p in self.ccdf],
            "counts": [int(c) for c in self.counts],
        })


def empirical_ccdf(values, thresholds=None) -> TailReport:
    """Exact strict-tail frequencies P(X > k) on a threshold grid.

    ``thresholds`` defaults to the integers 0 .. floor(max(values)).
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise EmptySampleError("empirical_ccdf needs at least one observation")
    if thresholds is None:
        thresholds = _default_grid(values)
    else:
        thresholds = np.asarray(thresholds, dtype=np.float64)
    return TailReport(thresholds=thresholds,
                      counts=_tail_counts(values, thresholds),
                      n=values.size)


@dataclass(frozen=True)
class HillEstimate:
    """Hill tail-index estimate from the top order statistics.

    ``estimate`` is on the CCDF-exponent scale: a sample with
    P(X > x) ~ x**(-a) yields estimate -> a.
    """

    estimate: float
    std_error: float
    k_top: int
    n: int


def hill_estimator(values, k_top: int | None = None) -> HillEstimate:
    """Reciprocal mean log-excess of the top ``k_top`` order statistics.

    With x_(1) >= ... >= x_(n) sorted decreasingly, the estimate is
    1 / mean(log x_(i) - log x_(k_top+1), i <= k_top) and the standard
    error is estimate / sqrt(k_top).  ``k_top`` defaults to floor(sqrt(n)).
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise EmptySampleError("hill_estimator needs at least one observation")
    n = values.size
    if k_top is None:
        k_top = int(math.sqrt(n))
    if not 2 <= k_top < n:
        raise InsufficientSampleError(
            f"k_top must satisfy 2 <= k_top < n = {n}, got {k_top}")
    if (values <= 0).any():
        raise InsufficientSampleError("Hill estimation needs positive samples")
    top = np.sort(values)[n - k_top - 1:]
    mean_log_excess = float(np.mean(np.log(top[1:]) - math.log(top[0])))
    if mean_log_excess <= 0.0:
        raise InsufficientSampleError(
            "top order statistics are all equal; tail index undefined")
    est = 1.0 / mean_log_excess
    return HillEstimate(estimate=est, std_error=est / math.sqrt(k_top),
                        k_top=int(k_top), n=n)


@dataclass(frozen=True)
class RatioReport:
    """Per-threshold comparison P(R > k) versus P(D > beta*k).

    ``ratios`` carries NaN where the denominator count is zero (flagged in
    ``denominator_zero``).  ``in_window`` marks thresholds where both tails
    have at least ``min_count`` observations -- the region where the ratio
    is statistically meaningful.  ``upper_bound_holds`` is the unscaled
    pointwise sample check P(R > k) <= P(D > k).
    """

    thresholds: np.ndarray
    numer_counts: np.ndarray
    denom_counts: np.ndarray
    plain_denom_counts: np.ndarray
    beta: float
    n: int
    min_count: int
    tolerance: float

    @property
    def ratios(self) -> np.ndarray:
        out = np.full(self.thresholds.size, np.nan)
        ok = self.denom_counts > 0
        out[ok] = self.numer_counts[ok] / self.denom_counts[ok]
        return out

    @property
    def denominator_zero(self) -> np.ndarray:
        return self.denom_counts == 0

    @property
    def in_window(self) -> np.ndarray:
        return (self.numer_counts >= self.min_count) & (self.denom_counts >= self.min_count)

    @property
    def upper_bound_holds(self) -> bool:
        return bool((self.numer_counts <= self.plain_denom_counts).all())

    @property
    def min_window_ratio(self) -> float:
        if not self.in_window.any():
            return math.nan
        return float(self.ratios[self.in_window].min())

    def passing_window(self) -> tuple[float, float] | None:
        """Largest contiguous threshold run with ratio >= 1 - tolerance."""
        good = np.zeros(self.thresholds.size, dtype=bool)
        ok = self.denom_counts > 0
        good[ok] = self.numer_counts[ok] / self.denom_counts[ok] >= 1.0 - self.tolerance
        best = None
        best_len = 0
        i = 0
        while i < good.size:
            if good[i]:
                j = i
                while j + 1 < good.size and good[j + 1]:
                    j += 1
                if j - i + 1 > best_len:
                    best_len = j - i + 1
                    best = (float(self.thresholds[i]), float(self.thresholds[j]))
                i = j + 1
            else:
                i += 1
        return best

    def to_json(self) -> str:
        window = self.passing_window()
        return json.dumps({
            "beta": self.beta,
            "n": self.n,
            "min_count": self.min_count,
            "tolerance": self.tolerance,
            "thresholds": [float(k) for k in self.thresholds],
            "ratios": [None if math.isnan(r) else float(r) for r in self.ratios],
            "denominator_zero": [bool(z) for z in self.denominator_zero],
            "in_window": [bool(w) for w in self.in_window],
            "min_window_ratio": None if math.isnan(self.min_window_ratio)
                                else self.min_window_ratio,
            "upper_bound_holds": self.upper_bound_holds,
            "passing_window": list(window) if window else None,
        })


def ratio_bound_report(pagerank_values, degree_values, beta: float,
                       thresholds=None, min_count: int = 100,
                       tolerance: float = 0.1) -> RatioReport:
    """Tail-ratio table P(R > k) / P(D > beta*k) over a threshold grid.

    Both samples must come from the same sampling design (same graph, same
    roots) so that the ratio estimates a single population quantity.
    """
    r = np.asarray(pagerank_values, dtype=np.float64)
    d = np.asarray(degree_values, dtype=np.float64)
    if r.size == 0 or d.size == 0:
        raise EmptySampleError("ratio_bound_report needs nonempty samples")
    if r.size != d.size:
        raise InsufficientSampleError(
            f"sample sizes differ: {r.size} PageRank vs {d.size} degree values")
    if beta <= 0:
        raise InsufficientSampleError(f"beta must be positive, got {beta}")
    if thresholds is None:
        thresholds = _default_grid(r)
    else:
        thresholds = np.asarray(thresholds, dtype=np.float64)
    return RatioReport(
        thresholds=thresholds,
        numer_counts=_tail_counts(r, thresholds),
        denom_counts=_tail_counts(d, beta * thresholds),
        plain_denom_counts=_tail_counts(d, thresholds),
        beta=float(beta),
        n=r.size,
        min_count=int(min_count),
        tolerance=float(tolerance),
    )


@dataclass(frozen=True)
class ConditionProbe:
    """Empirical check of the assortativity condition behind the lower bound.

    For each threshold k the probe compares the joint event {root degree > k
    and at least (1-epsilon) of its neighbor slots lead to vertices of
    degree >= alpha} against the marginal {root degree > k}.  A decaying
    joint/marginal ratio supports the lower bound; a ratio stuck near 1
    (every neighbor of every high-degree vertex is itself high-degree, as in
    the circulant components) is the failure mode.
    """

    alpha: float
    epsilon: float
    thresholds: np.ndarray
    joint_counts: np.ndarray
    marginal_counts: np.ndarray
    n: int

    @property
    def ratios(self) -> np.ndarray:
        out = np.full(self.thresholds.size, np.nan)
        ok = self.marginal_counts > 0
        out[ok] = self.joint_counts[ok] / self.marginal_counts[ok]
        return out

    def populated(self, min_count: int = 25) -> np.ndarray:
        return self.marginal_counts >= min_count

    def decay_factor(self, min_count: int = 25) -> float:
        """Ratio at the smallest populated threshold over the largest.

        Values well above 1 mean the joint event dies off faster than the
        marginal; NaN when fewer than two thresholds are populated or the
        last populated ratio is 0 with a 0 first ratio.
        """
        pop = np.flatnonzero(self.populated(min_count))
        if pop.size < 2:
            return math.nan
        first = self.ratios[pop[0]]
        last = self.ratios[pop[-1]]
        if first == 0.0:
            return math.nan
        if last == 0.0:
            return math.inf
        return float(first / last)

    def to_json(self) -> str:
        return json.dumps({
            "alpha": self.alpha,
            "epsilon": self.epsilon,
            "n": self.n,
            "thresholds": [float(k) for k in self.thresholds],
            "joint_counts": [int(c) for c in self.joint_counts],
            "marginal_counts": [int(c) for c in self.marginal_counts],
            "ratios": [None if math.isnan(r) else float(r) for r in self.ratios],
        })


def condition_probe(degrees, high_degree_neighbor_counts, alpha: float,
                    epsilon: float, thresholds=None) -> ConditionProbe:
    """Joint/marginal frequencies of the high-degree-neighbors condition.

    ``degrees[i]`` is the degree of the i-th sampled root and
    ``high_degree_neighbor_counts[i]`` the number of its neighbor slots
    whose endpoint has degree >= alpha (see
    ``graphs.high_degree_neighbor_counts`` and
    ``limit_trees.root_high_degree_count``).
    """
    d = np.asarray(degrees, dtype=np.float64)
    h = np.asarray(high_degree_neighbor_counts, dtype=np.float64)
    if d.size == 0:
        raise EmptySampleError("condition_probe needs at least one root")
    if d.size != h.size:
        raise InsufficientSampleError(
            f"sample sizes differ: {d.size} degrees vs {h.size} neighbor counts")
    if not 0.0 < epsilon < 1.0:
        raise InsufficientSampleError(f"epsilon must lie in (0,1), got {epsilon}")
    if thresholds is None:
        thresholds = _default_grid(d)
    else:
        thresholds = np.asarray(thresholds, dtype=np.float64)
    cond = h >= (1.0 - epsilon) * d
    joint = _tail_counts(d[cond], thresholds)
    marginal = _tail_counts(d, thresholds)
    return ConditionProbe(alpha=float(alpha), epsilon=float(epsilon),
                          thresholds=thresholds, joint_counts=joint,
                          marginal_counts=marginal, n=d.size)
