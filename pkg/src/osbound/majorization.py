"""Majorization predicate, nonincreasing probability weights and the
convergent weight sequence ``p(m)``.

A weight vector here is an element of the ordered simplex::

    {w : w_1 >= w_2 >= ... >= w_n >= 0, sum(w) == 1}

The uniform vector ``(1/n, ..., 1/n)`` is the minimal element of this set
in the majorization order, and ``weight_sequence(n, m)`` walks down towards
it as ``m`` grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SUM_TOL",
    "WeightError",
    "NegativeWeightError",
    "OrderingError",
    "NormalizationError",
    "WeightVector",
    "validate_weights",
    "is_majorized",
    "weight_sequence",
    "uniform_weights",
    "sequence_normalizer",
    "weight_deviation",
]

SUM_TOL = 1e-12


class WeightError(ValueError):
    """Raised when a raw weight list is not a valid ordered probability vector."""


class NegativeWeightError(WeightError):
    pass


class OrderingError(WeightError):
    pass


class NormalizationError(WeightError):
    pass


@dataclass(frozen=True)
class WeightVector:
    """Validated nonincreasing probability vector.

    Build instances with :func:`validate_weights`, :func:`weight_sequence`
    or :func:`uniform_weights`; the constructor re-checks the invariants.
    """

    weights: tuple[float, ...]

    def __post_init__(self):
        _check(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def is_uniform(self, tol: float = SUM_TOL) -> bool:
        return bool(np.all(np.abs(self.array - 1.0 / self.n) <= tol))


def _check(values: Sequence[float]) -> None:
    if len(values) == 0:
        raise WeightError("weight list is empty")
    for k, v in enumerate(values):
        if not np.isfinite(v):
            raise WeightError(f"weight {k + 1} is not finite: {v!r}")
        if v < 0:
            raise NegativeWeightError(f"weight {k + 1} is negative: {v!r}")
    for k in range(len(values) - 1):
        if values[k] < values[k + 1]:
            raise OrderingError(
                f"weights must be nonincreasing; w[{k + 1}]={values[k]!r} "
                f"< w[{k + 2}]={values[k + 1]!r}"
            )
    total = float(np.sum(values))
    if abs(total - 1.0) > SUM_TOL:
        raise NormalizationError(f"weights sum to {total!r}, not 1")


def validate_weights(raw: Iterable[float | Fraction | str]) -> WeightVector:
    """Check ``raw`` for membership in the ordered simplex.

    Nothing is sorted or renormalized: a bad vector raises
    :class:`NegativeWeightError`, :class:`OrderingError` or
    :class:`NormalizationError`.

    >>> validate_weights([Fraction(5, 9), Fraction(3, 9), Fraction(1, 9)]).n
    3
    """
    values = tuple(float(Fraction(v)) if isinstance(v, str) else float(v) for v in raw)
    return WeightVector(values)


def is_majorized(a: Sequence[float], b: Sequence[float], tol: float = SUM_TOL) -> bool:
    """Return True when ``a`` is majorized by ``b`` (``a ≺ b``).

    Both vectors are sorted in decreasing order; every partial sum of ``a``
    must not exceed the matching partial sum of ``b`` and the totals must
    agree. ``tol`` is an absolute slack on every comparison.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} != {b.size}")
    if a.size == 0:
        raise ValueError("vectors must be non-empty")
    ca = np.cumsum(np.sort(a)[::-1])
    cb = np.cumsum(np.sort(b)[::-1])
    if abs(ca[-1] - cb[-1]) > tol:
        return False
    return bool(np.all(ca[:-1] <= cb[:-1] + tol))


def sequence_normalizer(n: int, m: int) -> int:
    """``a_n(m) = n*m + n(n+1)/2``, the common denominator of ``p(m)``."""
    return n * m + n * (n + 1) // 2


def weight_sequence(n: int, m: int) -> WeightVector:
    """Weights ``p_i(m) = (m + n - i + 1) / a_n(m)`` for ``i = 1..n``.

    ``p(0)`` is the steepest member; ``p(m)`` tends to the uniform vector
    as ``m -> inf`` and is majorized by every earlier member.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    denom = sequence_normalizer(n, m)
    values = tuple((m + n - i + 1) / denom for i in range(1, n + 1))
    # float rounding can leave the sum 1 ulp off; still well inside SUM_TOL
    return WeightVector(values)


def uniform_weights(n: int) -> WeightVector:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return WeightVector((1.0 / n,) * n)


def weight_deviation(n: int, m: int) -> float:
    """Exact ``p_1(m) - 1/n = (n - 1) / (2 a_n(m))``."""
    return (n - 1) / (2 * sequence_normalizer(n, m))
