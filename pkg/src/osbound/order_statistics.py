"""Order-statistic CDFs, the mixture envelopes ``H_n`` / ``K_n`` and
order-statistic means.

For an i.i.d. sample of size ``n`` from ``F``::

    F_{i:n}(x) = sum_{k=i}^{n} C(n, k) F(x)^k (1 - F(x))^(n-k) = I_{F(x)}(i, n - i + 1)

With nonincreasing weights ``p`` the two mixtures::

    H_n(x) = sum_i p_i F_{n-i+1:n}(x)   <=   F(x)   <=   K_n(x) = sum_i p_i F_{i:n}(x)

sandwich ``F``, with equality everywhere exactly when ``p`` is uniform.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from .distributions import Distribution, Empirical
from .majorization import SUM_TOL, WeightVector
from .quadrature import QuadratureConfig, adaptive_simpson

__all__ = [
    "MixtureSpec",
    "SignatureVector",
    "order_stat_cdf",
    "order_stat_cdfs",
    "order_stat_cdf_oracle",
    "lower_bound",
    "upper_bound",
    "bound_pair",
    "signature_cdf",
    "order_stat_mean",
    "order_stat_means",
]


@dataclass(frozen=True)
class MixtureSpec:
    """A distribution together with ordered weights; ``n = len(weights)``."""

    dist: Distribution
    weights: WeightVector

    @property
    def n(self) -> int:
        return self.weights.n


@dataclass(frozen=True)
class SignatureVector:
    """System signature ``z_i = P(T = X_{i:n})``.

    Unlike :class:`WeightVector` the entries need not be monotone, so the
    envelope inequalities do not apply to signature mixtures.
    """

    entries: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.entries)
        if not values:
            raise ValueError("signature is empty")
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise ValueError(f"signature entries must be finite and nonnegative: {values}")
        if abs(math.fsum(values) - 1.0) > SUM_TOL:
            raise ValueError(f"signature entries sum to {math.fsum(values)!r}, not 1")
        object.__setattr__(self, "entries", values)

    @property
    def n(self) -> int:
        return len(self.entries)


def _check_index(i: int, n: int) -> None:
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not 1 <= i <= n:
        raise IndexError(f"order statistic index i={i} out of range 1..{n}")


def order_stat_cdf(dist: Distribution, i: int, n: int, x):
    """``P(X_{i:n} <= x)`` through the regularized incomplete beta function."""
    _check_index(i, n)
    return special.betainc(i, n - i + 1, dist.cdf(x))


def order_stat_cdfs(dist: Distribution, n: int, x) -> np.ndarray:
    """All ``F_{i:n}(x)`` at once; row ``i - 1`` holds ``F_{i:n}``.

    Output shape is ``(n,) + np.shape(x)``.
    """
    _check_index(1, n)
    f = np.asarray(dist.cdf(x), dtype=float)
    i = np.arange(1, n + 1, dtype=float).reshape((n,) + (1,) * f.ndim)
    return special.betainc(i, n - i + 1, f)


def order_stat_cdf_oracle(dist: Distribution, i: int, n: int, x: float) -> float:
    """Binomial-tail summation of ``F_{i:n}(x)``; a cross-check for small ``n``."""
    _check_index(i, n)
    f = float(dist.cdf(x))
    return math.fsum(math.comb(n, k) * f**k * (1.0 - f) ** (n - k) for k in range(i, n + 1))


def _mix(weights: WeightVector | Sequence[float], rows: np.ndarray) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    return np.tensordot(w, rows, axes=(0, 0))


def upper_bound(spec: MixtureSpec, x):
    """``K_n(x) = sum_i p_i F_{i:n}(x)``."""
    return _mix(spec.weights, order_stat_cdfs(spec.dist, spec.n, x))


def lower_bound(spec: MixtureSpec, x):
    """``H_n(x) = sum_i p_i F_{n-i+1:n}(x)``."""
    return _mix(spec.weights, order_stat_cdfs(spec.dist, spec.n, x)[::-1])


def bound_pair(spec: MixtureSpec, x) -> tuple[np.ndarray, np.ndarray]:
    """``(H_n(x), K_n(x))`` sharing one evaluation of the order-statistic CDFs."""
    rows = order_stat_cdfs(spec.dist, spec.n, x)
    return _mix(spec.weights, rows[::-1]), _mix(spec.weights, rows)


def signature_cdf(dist: Distribution, z: SignatureVector, x):
    """Lifetime CDF ``P(T <= x) = sum_i z_i F_{i:n}(x)`` of a coherent system."""
    return _mix(z.entries, order_stat_cdfs(dist, z.n, x))


def order_stat_mean(dist: Distribution, i: int, n: int, cfg: QuadratureConfig | None = None) -> float:
    """``E[X_{i:n}]``.

    Uses ``E X = lo + ∫_lo^inf (1 - F_{i:n}) - ∫_{-inf}^lo F_{i:n}`` with the
    integral truncated to ``dist.support(cfg.truncation_prob)``. Empirical
    distributions are integrated exactly as step functions.
    """
    _check_index(i, n)
    return _order_stat_mean(dist, i, n, cfg or QuadratureConfig())


@functools.lru_cache(maxsize=4096)
def _order_stat_mean(dist: Distribution, i: int, n: int, cfg: QuadratureConfig) -> float:
    if isinstance(dist, Empirical):
        pts = dist.breakpoints()
        surv = 1.0 - special.betainc(i, n - i + 1, dist.cdf(pts[:-1]))
        return float(pts[0] + np.sum(np.diff(pts) * surv))
    lo, hi = dist.support(cfg.truncation_prob)
    res = adaptive_simpson(lambda x: 1.0 - special.betainc(i, n - i + 1, dist.cdf(x)), lo, hi, cfg)
    return lo + res.value


def order_stat_means(dist: Distribution, n: int, cfg: QuadratureConfig | None = None) -> np.ndarray:
    """``(mu_{1:n}, ..., mu_{n:n})``."""
    return np.array([order_stat_mean(dist, i, n, cfg) for i in range(1, n + 1)])
