"""Adaptive Simpson quadrature, vectorized over the active interval set.

The classic recursive scheme accepts an interval ``[a, b]`` when the two
half-interval Simpson estimates differ from the whole-interval estimate by
at most ``15 * tol``; otherwise both halves are refined with ``tol / 2``.
Here every generation of pending intervals is refined in one batch, so the
integrand is called on arrays and the acceptance decisions are identical to
the recursive version (hence deterministic).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

__all__ = ["QuadratureConfig", "QuadratureError", "QuadResult", "adaptive_simpson", "default_config"]

TOL_ENV_VAR = "OSBOUND_TOL"


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-9
    max_depth: int = 40
    truncation_prob: float = 1e-9
    initial_panels: int = 16
    max_evaluations: int = 2_000_000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if not 0 < self.truncation_prob < 0.01:
            raise ValueError(f"truncation_prob must lie in (0, 0.01), got {self.truncation_prob}")
        if self.max_depth < 1 or self.initial_panels < 1:
            raise ValueError("max_depth and initial_panels must be >= 1")

    def with_tol(self, abs_tol: float) -> "QuadratureConfig":
        return replace(self, abs_tol=abs_tol)


def default_config() -> QuadratureConfig:
    """Default config, with ``abs_tol`` taken from ``$OSBOUND_TOL`` if set."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw:
        try:
            return QuadratureConfig(abs_tol=float(raw))
        except ValueError as exc:
            raise ValueError(f"bad {TOL_ENV_VAR}={raw!r}: {exc}") from None
    return QuadratureConfig()


class QuadratureError(RuntimeError):
    """Raised when refinement hits ``max_depth`` or ``max_evaluations`` first."""

    def __init__(self, message: str, value: float, error: float):
        super().__init__(f"{message} (partial value {value:.10g}, achieved error {error:.3g})")
        self.value = value
        self.error = error


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
) -> QuadResult:
    """Integrate a vectorized ``f`` over ``[a, b]`` to ``cfg.abs_tol``.

    ``f`` must accept a 1-D float array and return an array of the same
    shape. The returned error is the summed Richardson estimate over the
    accepted intervals.
    """
    cfg = cfg or QuadratureConfig()
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    if a > b:
        res = adaptive_simpson(f, b, a, cfg)
        return QuadResult(-res.value, res.error, res.evaluations)

    k = cfg.initial_panels
    nodes = np.linspace(a, b, 2 * k + 1)
    fn = np.asarray(f(nodes), dtype=float)
    evals = nodes.size
    lo, hi = nodes[0:-1:2], nodes[2::2]
    flo, fmid, fhi = fn[0:-1:2], fn[1::2], fn[2::2]
    whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    tol = np.full(k, cfg.abs_tol / k)

    total = 0.0
    err = 0.0
    depth = 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        fq = np.asarray(f(np.concatenate([0.5 * (lo + mid), 0.5 * (mid + hi)])), dtype=float)
        evals += fq.size
        fl, fr = fq[: lo.size], fq[lo.size :]
        left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi)
        diff = left + right - whole
        done = np.abs(diff) <= 15.0 * tol
        total += float(np.sum((left + right + diff / 15.0)[done]))
        err += float(np.sum(np.abs(diff[done]))) / 15.0

        depth += 1
        keep = ~done
        if not keep.any():
            break
        if depth >= cfg.max_depth or evals + 4 * int(keep.sum()) > cfg.max_evaluations:
            pending = float(np.sum((left + right)[keep]))
            err += float(np.sum(np.abs(diff[keep]))) / 15.0
            raise QuadratureError(
                f"adaptive Simpson did not converge (depth {depth}, {evals} evaluations; "
                f"limits {cfg.max_depth} / {cfg.max_evaluations})",
                total + pending,
                err,
            )
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fl, fmid, fr, fhi = flo[keep], fl[keep], fmid[keep], fr[keep], fhi[keep]
        left, right, tol = left[keep], right[keep], tol[keep] / 2.0
        lo = np.concatenate([lo, mid])
        hi = np.concatenate([mid, hi])
        flo = np.concatenate([flo, fmid])
        fhi = np.concatenate([fmid, fhi])
        fmid = np.concatenate([fl, fr])
        whole = np.concatenate([left, right])
        tol = np.concatenate([tol, tol])
    return QuadResult(total, err, evals)
