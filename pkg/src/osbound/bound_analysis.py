"""Distances between the envelopes, rate constants and convergence tables.

Since ``p`` is nonincreasing and ``F_{1:n} >= ... >= F_{n:n}``, pairing
index ``i`` with ``n + 1 - i`` gives::

    K_n - H_n = sum_{i < (n+1)/2} (p_i - p_{n+1-i}) (F_{i:n} - F_{n+1-i:n}) >= 0

so ``|K - H|`` is a smooth integrand for continuous ``F`` and a step
function for empirical ``F``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .distributions import Distribution, Empirical
from .majorization import (
    WeightVector,
    sequence_normalizer,
    weight_deviation,
    weight_sequence,
)
from .order_statistics import MixtureSpec, bound_pair, order_stat_cdfs
from .quadrature import QuadratureConfig, adaptive_simpson

__all__ = [
    "DEFAULT_ALPHA",
    "PAPER_TABLE",
    "PAPER_FIGURE_VALUE",
    "Distance",
    "DistanceRow",
    "DistanceReport",
    "InfeasibleGapError",
    "l1_distance",
    "l2_distance",
    "envelope_distance",
    "c_constant",
    "rate_bound",
    "delta_table",
    "best_m",
    "min_distance_weights",
    "sequence_distance_identity",
    "sequence_normalized_delta",
]

DEFAULT_ALPHA = 0.5

# Published Δ_m values for the standard normal, n = 3. They are displayed next
# to the recomputed values and never used as expected results.
PAPER_TABLE: dict[int, float] = {
    1: 0.34337,
    2: 0.13735,
    3: 0.10301,
    4: 0.08241,
    5: 0.06867,
    10: 0.03434,
    15: 0.02423,
    20: 0.018729,
    25: 0.01526,
    30: 0.01288,
}
# Published L1 distance for the normal, n = 3, weights (2/3, 2/9, 1/9).
PAPER_FIGURE_VALUE = 0.30903


class InfeasibleGapError(ValueError):
    """No grid weight vector reaches the requested separation ``p_1 - p_n``."""


@dataclass(frozen=True)
class Distance:
    """Integral value plus its error budget (quadrature + truncated tails)."""

    value: float
    error: float

    def __float__(self) -> float:
        return self.value


def _gap_function(spec: MixtureSpec):
    def gap(x):
        h, k = bound_pair(spec, x)
        return np.abs(k - h)

    return gap


def envelope_distance(spec: MixtureSpec, power: int, cfg: QuadratureConfig | None = None) -> Distance:
    """``∫ |K_n - H_n|^power dx`` with its error budget."""
    cfg = cfg or QuadratureConfig()
    gap = _gap_function(spec)
    if spec.weights.is_uniform(tol=0.0):
        return Distance(0.0, 0.0)
    if isinstance(spec.dist, Empirical):
        pts = spec.dist.breakpoints()
        vals = gap(pts[:-1]) ** power
        return Distance(float(np.sum(np.diff(pts) * vals)), 0.0)
    lo, hi = spec.dist.support(cfg.truncation_prob)
    res = adaptive_simpson(lambda x: gap(x) ** power, lo, hi, cfg)
    # |K - H| <= 1 and both envelopes sit between the extreme order statistics
    tail = spec.n * spec.dist.tail_mass(lo, hi)
    return Distance(res.value, res.error + tail)


def l1_distance(spec: MixtureSpec, cfg: QuadratureConfig | None = None) -> float:
    """``∫ |K_n(x) - H_n(x)| dx``."""
    return envelope_distance(spec, 1, cfg).value


def l2_distance(spec: MixtureSpec, cfg: QuadratureConfig | None = None) -> float:
    """``∫ (K_n(x) - H_n(x))^2 dx``, deliberately without a square root."""
    return envelope_distance(spec, 2, cfg).value


def c_constant(dist: Distribution, n: int, cfg: QuadratureConfig | None = None) -> float:
    """``c_n = sum_i ∫ |F_{i:n} - F_{n-i+1:n}| dx``, integrated directly."""
    cfg = cfg or QuadratureConfig()
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return 0.0

    def integrand(x):
        rows = order_stat_cdfs(dist, n, x)
        return np.sum(np.abs(rows - rows[::-1]), axis=0)

    if isinstance(dist, Empirical):
        pts = dist.breakpoints()
        return float(np.sum(np.diff(pts) * integrand(pts[:-1])))
    lo, hi = dist.support(cfg.truncation_prob)
    return adaptive_simpson(integrand, lo, hi, cfg).value


def rate_bound(dist: Distribution, n: int, m: int, cfg: QuadratureConfig | None = None) -> float:
    """Upper bound ``(p_1(m) - 1/n) c_n`` on ``Δ_m``."""
    if n < 2:
        raise ValueError(f"rate_bound needs n >= 2, got {n}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return weight_deviation(n, m) * c_constant(dist, n, cfg)


@dataclass(frozen=True)
class DistanceRow:
    m: int
    delta: float
    rate_bound: float
    ratio: float
    error: float
    delta_paper: float | None = None


@dataclass(frozen=True)
class DistanceReport:
    n: int
    alpha: float
    c_n: float
    rows: tuple[DistanceRow, ...]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


def delta_table(
    dist: Distribution,
    n: int,
    m_list: Sequence[int],
    alpha: float = DEFAULT_ALPHA,
    cfg: QuadratureConfig | None = None,
    *,
    paper_values: dict[int, float] | None = None,
    workers: int = 1,
) -> DistanceReport:
    """``Δ_m`` for ``p(m)``, the bound ``(p_1(m) - 1/n) c_n`` and ``Δ_m m^(1-alpha)``.

    Rows come back sorted by ``m``; with ``workers > 1`` rows are computed
    on a thread pool but the result does not depend on scheduling.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if n < 2:
        raise ValueError(f"delta_table needs n >= 2, got {n}")
    cfg = cfg or QuadratureConfig()
    ms = sorted(set(int(m) for m in m_list))
    if any(m < 0 for m in ms):
        raise ValueError("m values must be >= 0")
    c_n = c_constant(dist, n, cfg)

    def row(m: int) -> DistanceRow:
        d = envelope_distance(MixtureSpec(dist, weight_sequence(n, m)), 1, cfg)
        paper = None if paper_values is None else paper_values.get(m)
        return DistanceRow(
            m=m,
            delta=d.value,
            rate_bound=weight_deviation(n, m) * c_n,
            ratio=d.value * m ** (1.0 - alpha),
            error=d.error,
            delta_paper=paper,
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(row, ms))
    else:
        rows = tuple(row(m) for m in ms)
    return DistanceReport(n=n, alpha=alpha, c_n=c_n, rows=rows)


def best_m(dist: Distribution, n: int, eps: float, cfg: QuadratureConfig | None = None) -> int:
    """Smallest ``m >= 0`` with ``rate_bound(dist, n, m) <= eps``.

    Solves ``(n - 1) c_n / (2 (n m + n(n+1)/2)) <= eps`` for ``m`` directly.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if n < 2:
        return 0
    c_n = c_constant(dist, n, cfg)
    m = math.ceil(((n - 1) * c_n / (2.0 * eps) - n * (n + 1) / 2.0) / n)
    m = max(m, 0)
    # guard the ceiling against float round-off at exact boundaries
    while m > 0 and weight_deviation(n, m - 1) * c_n <= eps:
        m -= 1
    while weight_deviation(n, m) * c_n > eps:
        m += 1
    return m


def _grid_vectors(n: int, denominator: int):
    """Nonincreasing compositions of ``denominator`` into ``n`` nonnegative parts."""

    def rec(remaining: int, slots: int, cap: int):
        if slots == 1:
            if remaining <= cap:
                yield (remaining,)
            return
        for first in range(min(cap, remaining), -1, -1):
            if first * slots < remaining:
                break
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    yield from rec(denominator, n, denominator)


def min_distance_weights(
    dist: Distribution,
    n: int,
    gap: float | Fraction,
    grid_denominator: int,
    cfg: QuadratureConfig | None = None,
    *,
    workers: int = 1,
) -> WeightVector:
    """Exhaustive grid search for the squared-L2 minimizer with ``p_1 - p_n >= gap``.

    Candidates are ordered weight vectors with entries ``k / grid_denominator``.
    Ties (within ``1e-12``) go to the lexicographically smallest vector.
    """
    if n < 1 or n > 4:
        raise ValueError(f"grid search supports 1 <= n <= 4, got {n}")
    if not 1 <= grid_denominator <= 60:
        raise ValueError(f"grid_denominator must lie in 1..60, got {grid_denominator}")
    gap = Fraction(gap) if not isinstance(gap, float) else Fraction(gap).limit_denominator(10**12)
    if gap < 0:
        raise ValueError(f"gap must be >= 0, got {gap}")
    cfg = cfg or QuadratureConfig()
    candidates = [c for c in _grid_vectors(n, grid_denominator) if Fraction(c[0] - c[-1], grid_denominator) >= gap]
    if not candidates:
        raise InfeasibleGapError(f"no weight vector with denominator {grid_denominator} has p_1 - p_n >= {gap}")

    def score(c):
        w = WeightVector(tuple(k / grid_denominator for k in c))
        return envelope_distance(MixtureSpec(dist, w), 2, cfg).value

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(score, candidates))
    else:
        scores = [score(c) for c in candidates]
    best_score = min(scores)
    winners = [c for c, s in zip(candidates, scores) if s <= best_score + 1e-12]
    best = min(winners)
    return WeightVector(tuple(k / grid_denominator for k in best))


def sequence_distance_identity(n: int, m: int, means: np.ndarray) -> float:
    """``Δ_m`` from order-statistic means: ``sum_i |p_i - 1/n| |mu_{n-i+1} - mu_i|``.

    Valid when ``p_i - 1/n`` changes sign at the middle index, which holds for
    every member of the weight sequence.
    """
    p = weight_sequence(n, m).array
    return float(np.sum(np.abs(p - 1.0 / n) * np.abs(means[::-1] - means)))


def sequence_normalized_delta(delta: float, n: int, m: int) -> float:
    """``Δ_m a_n(m)``, constant in ``m`` for a fixed distribution."""
    return delta * sequence_normalizer(n, m)


