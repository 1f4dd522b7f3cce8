"""Distributions with CDF, generalized quantile, mean and seeded sampling.

Four kinds are supported: ``Uniform(a, b)``, ``StandardNormal()``,
``Exponential(rate)`` and ``Empirical(sample)``. All of them are frozen
dataclasses, so they are hashable and safe to share between threads.

Sampling is inverse-transform on a counter-based Philox stream, so a given
seed always yields the same values regardless of how work is split.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import special

__all__ = [
    "Distribution",
    "Uniform",
    "StandardNormal",
    "Exponential",
    "Empirical",
    "make_generator",
    "uniform_variates",
    "ks_statistic",
    "read_sample_file",
    "parse_distribution",
]

_MAX_SEED = 2**64 - 1


def make_generator(seed: int) -> np.random.Generator:
    if not 0 <= int(seed) <= _MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.Philox(int(seed)))


def uniform_variates(rng: np.random.Generator, size) -> np.ndarray:
    """Uniforms strictly inside (0, 1) on the grid ``(k + 1/2) / 2**53``."""
    k = rng.integers(0, 2**53, size=size, dtype=np.int64)
    return (k + 0.5) / 2.0**53


class Distribution(ABC):
    """Univariate distribution interface used by every bound computation."""

    @abstractmethod
    def cdf(self, x):
        """P(X <= x), vectorized over ``x``."""

    @abstractmethod
    def quantile(self, u):
        """Smallest x with ``cdf(x) >= u``."""

    @abstractmethod
    def mean(self) -> float: ...

    @property
    def symmetric(self) -> bool:
        return False

    @property
    def is_discrete(self) -> bool:
        return False

    def support(self, eps: float) -> tuple[float, float]:
        """Integration window: finite support ends, else the ``eps`` quantiles."""
        return float(self.quantile(eps)), float(self.quantile(1.0 - eps))

    @abstractmethod
    def tail_mass(self, lo: float, hi: float) -> float:
        """``∫_{-inf}^{lo} F dx + ∫_{hi}^{inf} (1 - F) dx``.

        Any mixture of order-statistic CDFs of size ``n`` is below ``n F`` on
        the left and above ``1 - n(1 - F)`` on the right, so ``n`` times this
        bounds what is lost by truncating an integral to ``[lo, hi]``.
        """

    def sample(self, seed: int, count: int) -> np.ndarray:
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        return self.sample_from(make_generator(seed), count)

    def sample_from(self, rng: np.random.Generator, size) -> np.ndarray:
        return np.asarray(self.quantile(uniform_variates(rng, size)), dtype=float)

    def _check_u(self, u):
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0) | (u >= 1)) or np.any(np.isnan(u)):
            raise ValueError("quantile argument must lie in the open interval (0, 1)")
        return u


@dataclass(frozen=True)
class Uniform(Distribution):
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise ValueError(f"uniform needs finite a < b, got a={self.a}, b={self.b}")

    def cdf(self, x):
        return np.clip((np.asarray(x, dtype=float) - self.a) / (self.b - self.a), 0.0, 1.0)

    def quantile(self, u):
        return self.a + self._check_u(u) * (self.b - self.a)

    def mean(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def symmetric(self) -> bool:
        return True

    def support(self, eps: float) -> tuple[float, float]:
        return self.a, self.b

    def tail_mass(self, lo: float, hi: float) -> float:
        left = 0.0 if lo <= self.a else 0.5 * (lo - self.a) ** 2 / (self.b - self.a)
        right = 0.0 if hi >= self.b else 0.5 * (self.b - hi) ** 2 / (self.b - self.a)
        return left + right


@dataclass(frozen=True)
class StandardNormal(Distribution):
    def cdf(self, x):
        return special.ndtr(np.asarray(x, dtype=float))

    def quantile(self, u):
        return special.ndtri(self._check_u(u))

    def mean(self) -> float:
        return 0.0

    @property
    def symmetric(self) -> bool:
        return True

    def tail_mass(self, lo: float, hi: float) -> float:
        # ∫_{-inf}^{t} Φ = tΦ(t) + φ(t), and by symmetry the same for the right tail
        def left(t):
            return t * special.ndtr(t) + math.exp(-0.5 * t * t) / math.sqrt(2 * math.pi)

        return float(left(lo) + left(-hi))


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise ValueError(f"exponential rate must be positive, got {self.rate}")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)

    def quantile(self, u):
        return -np.log1p(-self._check_u(u)) / self.rate

    def mean(self) -> float:
        return 1.0 / self.rate

    def support(self, eps: float) -> tuple[float, float]:
        return 0.0, float(self.quantile(1.0 - eps))

    def tail_mass(self, lo: float, hi: float) -> float:
        left = 0.0
        if lo > 0:
            left = lo - (-math.expm1(-self.rate * lo)) / self.rate
        return left + math.exp(-self.rate * hi) / self.rate


@dataclass(frozen=True, repr=False)
class Empirical(Distribution):
    """Right-continuous step CDF of a finite sample, ``#{x_j <= x} / N``."""

    sample_values: tuple[float, ...] = field(default=())

    def __post_init__(self):
        values = np.asarray(self.sample_values, dtype=float).ravel()
        if values.size == 0:
            raise ValueError("empirical distribution needs a non-empty sample")
        if not np.all(np.isfinite(values)):
            raise ValueError("empirical sample contains non-finite values")
        object.__setattr__(self, "sample_values", tuple(np.sort(values).tolist()))

    def __repr__(self) -> str:
        v = self.sample_values
        return f"Empirical(size={len(v)}, min={v[0]:.6g}, max={v[-1]:.6g})"

    @classmethod
    def from_sample(cls, values: Sequence[float]) -> "Empirical":
        return cls(tuple(float(v) for v in np.ravel(values)))

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.sample_values)

    @property
    def is_discrete(self) -> bool:
        return True

    def cdf(self, x):
        v = self.values
        return np.searchsorted(v, np.asarray(x, dtype=float), side="right") / v.size

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0) | (u > 1)) or np.any(np.isnan(u)):
            raise ValueError("empirical quantile argument must lie in (0, 1]")
        v = self.values
        levels = np.arange(1, v.size + 1) / v.size
        return v[np.searchsorted(levels, u, side="left")]

    def mean(self) -> float:
        return float(np.mean(self.values))

    def support(self, eps: float) -> tuple[float, float]:
        return self.sample_values[0], self.sample_values[-1]

    def tail_mass(self, lo: float, hi: float) -> float:
        return float(np.sum(np.maximum(lo - self.values, 0.0)) + np.sum(np.maximum(self.values - hi, 0.0))) / len(
            self.sample_values
        )

    def breakpoints(self) -> np.ndarray:
        """Distinct sample values; the CDF is constant between neighbours."""
        return np.unique(self.values)


def ks_statistic(sample: Sequence[float], dist: Distribution) -> float:
    """Kolmogorov-Smirnov sup distance between a sample's ECDF and ``dist.cdf``."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if dist.is_discrete:
        # both CDFs are right-continuous steps; compare at every jump point
        pts = np.union1d(x, dist.breakpoints())
        ecdf = np.searchsorted(x, pts, side="right") / n
        return float(np.max(np.abs(ecdf - dist.cdf(pts))))
    f = dist.cdf(x)
    above = np.arange(1, n + 1) / n - f
    below = f - np.arange(0, n) / n
    return float(max(above.max(), below.max()))


def read_sample_file(path: str | Path) -> tuple[float, ...]:
    """Read newline-delimited reals; blank lines are skipped.

    Raises ``ValueError`` naming the first line that does not parse.
    """
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                v = float(text)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: cannot parse {text!r} as a real number") from None
            if not math.isfinite(v):
                raise ValueError(f"{path}:{lineno}: non-finite value {text!r}")
            values.append(v)
    if not values:
        raise ValueError(f"{path}: no data")
    return tuple(values)


def parse_distribution(name: str, params: Sequence[float] | None = None, data: str | Path | None = None) -> Distribution:
    """Build a distribution from a CLI-style name and parameter list."""
    params = list(params or [])
    if name == "uniform":
        if len(params) not in (0, 2):
            raise ValueError("uniform takes parameters a,b")
        return Uniform(*params) if params else Uniform()
    if name == "normal":
        if params:
            raise ValueError("normal is the standard normal and takes no parameters")
        return StandardNormal()
    if name in ("exp", "exponential"):
        if len(params) > 1:
            raise ValueError("exp takes a single rate parameter")
        return Exponential(*params) if params else Exponential()
    if name == "empirical":
        if data is None:
            raise ValueError("empirical distribution requires a data file")
        return Empirical(read_sample_file(data))
    raise ValueError(f"unknown distribution {name!r}")
