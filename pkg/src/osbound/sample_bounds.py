"""Bounds on the sample mean and on ``E[X]`` from weighted order statistics.

For nonincreasing weights ``w`` and a sorted sample ``X_{1:n} <= ... <= X_{n:n}``::

    sum_i w_i X_{i:n}  <=  mean(X)  <=  sum_i w_i X_{n-i+1:n}

holds surely, and taking expectations gives the moment version with
``mu_{i:n} = E[X_{i:n}]``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import Distribution, make_generator
from .majorization import WeightVector, weight_deviation, weight_sequence
from .order_statistics import order_stat_means
from .quadrature import QuadratureConfig

__all__ = [
    "SLACK",
    "SampleBoundReport",
    "MomentBoundReport",
    "Counterexample",
    "sample_mean_bounds",
    "count_sample_bound_violations",
    "verify_sample_bounds",
    "moment_bounds",
]

SLACK = 1e-12
CHUNK_SIZE = 10_000


@dataclass(frozen=True)
class SampleBoundReport:
    lower: float
    sample_mean: float
    upper: float
    weights: WeightVector


@dataclass(frozen=True)
class MomentBoundReport:
    lower: float
    mean: float
    upper: float
    n: int
    m: int
    delta_bound: float
    C_n: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class Counterexample:
    sample: tuple[float, ...]
    lower: float
    mean: float
    upper: float


def sample_mean_bounds(samples: Sequence[float], weights: WeightVector) -> SampleBoundReport:
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    if x.size != weights.n:
        raise ValueError(f"sample has {x.size} values but weights have length {weights.n}")
    w = weights.array
    return SampleBoundReport(
        lower=float(w @ x),
        sample_mean=float(np.mean(x)),
        upper=float(w @ x[::-1]),
        weights=weights,
    )


def _chunk_violations(dist: Distribution, w: np.ndarray, size: int, seed_seq: np.random.SeedSequence):
    rng = make_generator(int(seed_seq.generate_state(1, dtype=np.uint64)[0]))
    x = np.sort(dist.sample_from(rng, (size, w.size)), axis=1)
    lower = x @ w
    upper = x[:, ::-1] @ w
    mean = x.mean(axis=1)
    bad = (lower > mean + SLACK) | (mean > upper + SLACK)
    first = None
    if bad.any():
        j = int(np.argmax(bad))
        first = Counterexample(tuple(x[j].tolist()), float(lower[j]), float(mean[j]), float(upper[j]))
    return int(bad.sum()), first


def count_sample_bound_violations(
    dist: Distribution,
    weights: WeightVector,
    trials: int,
    seed: int,
    *,
    workers: int = 1,
) -> tuple[int, Counterexample | None]:
    """Monte Carlo check of ``X^L <= mean <= X^U`` over ``trials`` samples.

    Trials run in fixed chunks of ``CHUNK_SIZE``; chunk ``j`` draws from the
    ``j``-th child of ``SeedSequence(seed)``, so the count and the first
    counterexample do not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    sizes = [CHUNK_SIZE] * (trials // CHUNK_SIZE)
    if trials % CHUNK_SIZE:
        sizes.append(trials % CHUNK_SIZE)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    w = weights.array
    jobs = list(zip(sizes, children))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _chunk_violations(dist, w, *job), jobs))
    else:
        results = [_chunk_violations(dist, w, *job) for job in jobs]
    total = sum(r[0] for r in results)
    first = next((r[1] for r in results if r[1] is not None), None)
    return total, first


def verify_sample_bounds(dist: Distribution, n: int, m: int, trials: int, seed: int, *, workers: int = 1) -> int:
    """Number of Monte Carlo violations of the sample-mean sandwich for ``p(m)``."""
    count, _ = count_sample_bound_violations(dist, weight_sequence(n, m), trials, seed, workers=workers)
    return count


def moment_bounds(dist: Distribution, n: int, m: int, cfg: QuadratureConfig | None = None) -> MomentBoundReport:
    """``sum p_i(m) mu_{i:n} <= E[X] <= sum p_i(m) mu_{n-i+1:n}`` plus the width bound.

    The width bound is ``(p_1(m) - 1/n) C_n`` with
    ``C_n = sum_i |mu_{n-i+1:n} - mu_{i:n}|``.
    """
    p = weight_sequence(n, m).array
    mu = order_stat_means(dist, n, cfg)
    c_n = float(np.sum(np.abs(mu[::-1] - mu)))
    return MomentBoundReport(
        lower=float(p @ mu),
        mean=dist.mean(),
        upper=float(p @ mu[::-1]),
        n=n,
        m=m,
        delta_bound=weight_deviation(n, m) * c_n,
        C_n=c_n,
    )
