"""Command-line interface: ``osbound {bounds,distance,table,verify,sample-bounds,optimize}``.

Exit status is 0 on success, 1 when a checked property fails (or a
computation cannot meet its tolerance), 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bound_analysis import (
    DEFAULT_ALPHA,
    PAPER_TABLE,
    delta_table,
    envelope_distance,
    min_distance_weights,
)
from .distributions import Distribution, Empirical, StandardNormal, Uniform, parse_distribution, read_sample_file
from .majorization import WeightVector, is_majorized, uniform_weights, validate_weights, weight_sequence
from .order_statistics import MixtureSpec, bound_pair
from .quadrature import QuadratureConfig, QuadratureError, default_config
from .sample_bounds import count_sample_bound_violations, sample_mean_bounds

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

ENVELOPE_SLACK = 1e-10
DEFAULT_M_LIST = (1, 2, 3, 4, 5, 10, 15, 20, 25, 30)


class UsageError(Exception):
    pass


class PropertyViolation(Exception):
    pass


def fmt(value: float) -> str:
    """8 significant digits, locale independent."""
    v = float(value)
    return "0" if v == 0 else format(v, ".8g")


def parse_fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number list {text!r}: {exc}") from None


def parse_float_list(text: str) -> list[float]:
    return [float(v) for v in parse_fraction_list(text)]


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse integer list {text!r}: {exc}") from None


@dataclass(frozen=True)
class RunConfig:
    dist: Distribution
    weights: WeightVector | None
    fmt: str
    cfg: QuadratureConfig
    seed: int
    alpha: float
    threads: int


def _distribution(args) -> Distribution:
    params = parse_float_list(args.params) if args.params else []
    try:
        return parse_distribution(args.dist, params, args.data)
    except OSError as exc:
        raise UsageError(f"cannot read data file: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _weights(args, n_hint: int | None = None) -> WeightVector | None:
    n = args.n if args.n is not None else n_hint
    if args.weights is not None:
        w = validate_weights(parse_fraction_list(args.weights))
        if n is not None and w.n != n:
            raise UsageError(f"--weights has length {w.n} but n={n}")
        return w
    if args.m is not None:
        return weight_sequence(n or 3, args.m)
    if args.uniform:
        return uniform_weights(n or 3)
    return None


def build_config(args, n_hint: int | None = None) -> RunConfig:
    cfg = default_config()
    if args.tol is not None:
        cfg = cfg.with_tol(args.tol)
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    if not 0 < args.alpha < 1:
        raise UsageError("--alpha must lie in (0, 1)")
    return RunConfig(
        dist=_distribution(args),
        weights=_weights(args, n_hint),
        fmt=args.format,
        cfg=cfg,
        seed=args.seed,
        alpha=args.alpha,
        threads=max(1, args.threads),
    )


def emit(out, fmt_name: str, header: Sequence[str], rows: Sequence[Sequence], single: bool = False) -> None:
    """Write rows as CSV or JSON; floats are rendered with :func:`fmt`."""

    def cell(v):
        if isinstance(v, (float, np.floating)):
            return fmt(v)
        return "" if v is None else str(v)

    if fmt_name == "json":

        def jval(v):
            if isinstance(v, (float, np.floating)):
                return float(fmt(v))
            return v

        records = [{h: jval(v) for h, v in zip(header, row)} for row in rows]
        out.write(json.dumps(records[0] if single else records, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell(v) for v in row])
    out.write(buf.getvalue())


def plot_grid(dist: Distribution, points: int) -> np.ndarray:
    if isinstance(dist, Uniform):
        lo, hi = dist.a, dist.b
    elif isinstance(dist, Empirical):
        lo, hi = dist.sample_values[0], dist.sample_values[-1]
    else:
        lo, hi = float(dist.quantile(0.001)), float(dist.quantile(0.999))
    return np.linspace(lo, hi, points)


def cmd_bounds(args, out) -> int:
    rc = build_config(args)
    x = plot_grid(rc.dist, args.points)
    h, k = bound_pair(MixtureSpec(rc.dist, rc.weights), x)
    f = rc.dist.cdf(x)
    bad = (h > f + ENVELOPE_SLACK) | (f > k + ENVELOPE_SLACK)
    emit(out, rc.fmt, ["x", "H", "F", "K"], list(zip(x, h, f, k)))
    if bad.any():
        j = int(np.argmax(bad))
        raise PropertyViolation(f"envelope violated at x={fmt(x[j])}: H={h[j]!r} F={f[j]!r} K={k[j]!r}")
    return EXIT_OK


def cmd_distance(args, out) -> int:
    rc = build_config(args)
    power = 1 if args.metric == "l1" else 2
    d = envelope_distance(MixtureSpec(rc.dist, rc.weights), power, rc.cfg)
    emit(out, rc.fmt, ["metric", "value", "error"], [(args.metric, d.value, d.error)], single=True)
    return EXIT_OK


def cmd_table(args, out) -> int:
    rc = build_config(args)
    n = args.n if args.n is not None else 3
    m_list = parse_int_list(args.m_list) if args.m_list else list(DEFAULT_M_LIST)
    paper = None
    if args.paper_table:
        if not (isinstance(rc.dist, StandardNormal) and n == 3):
            raise UsageError("--paper-table is only available for --dist normal with --n 3")
        paper = PAPER_TABLE
    try:
        report = delta_table(rc.dist, n, m_list, rc.alpha, rc.cfg, paper_values=paper, workers=rc.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    header = ["m", "delta_computed", "rate_bound"]
    if paper is not None:
        header.append("delta_paper")
    header.append("ratio")
    rows = []
    for r in report.rows:
        row = [r.m, r.delta, r.rate_bound]
        if paper is not None:
            row.append(r.delta_paper)
        row.append(r.ratio)
        rows.append(row)
    emit(out, rc.fmt, header, rows)
    return EXIT_OK


def _degenerate(n: int) -> WeightVector:
    return WeightVector((1.0,) + (0.0,) * (n - 1))


def cmd_verify(args, out) -> int:
    if args.weights is None and args.m is None and not args.uniform:
        args.m = 1
    rc = build_config(args)
    p = rc.weights
    n = p.n
    q = validate_weights(parse_fraction_list(args.q_weights)) if args.q_weights else _degenerate(n)
    if q.n != n:
        raise UsageError(f"--q-weights has length {q.n} but n={n}")
    if not is_majorized(p.array, q.array):
        raise UsageError("nesting check needs p majorized by q")

    x = plot_grid(rc.dist, args.points)
    if isinstance(rc.dist, Empirical):
        x = np.union1d(x, rc.dist.values)
    f = rc.dist.cdf(x)
    hp, kp = bound_pair(MixtureSpec(rc.dist, p), x)
    hq, kq = bound_pair(MixtureSpec(rc.dist, q), x)

    results = []

    env_bad = (hp > f + ENVELOPE_SLACK) | (f > kp + ENVELOPE_SLACK)
    detail = ""
    if env_bad.any():
        j = int(np.argmax(env_bad))
        detail = f"x={fmt(x[j])} H={fmt(hp[j])} F={fmt(f[j])} K={fmt(kp[j])}"
    results.append(("envelope", int(env_bad.sum()), x.size, detail))

    nest_bad = (hq > hp + ENVELOPE_SLACK) | (kp > kq + ENVELOPE_SLACK) | env_bad
    detail = ""
    if nest_bad.any():
        j = int(np.argmax(nest_bad))
        detail = f"x={fmt(x[j])} Hq={fmt(hq[j])} Hp={fmt(hp[j])} Kp={fmt(kp[j])} Kq={fmt(kq[j])}"
    results.append(("nesting", int(nest_bad.sum()), x.size, detail))

    count, first = count_sample_bound_violations(rc.dist, p, args.trials, rc.seed, workers=rc.threads)
    detail = ""
    if first is not None:
        detail = f"sample={[fmt(v) for v in first.sample]} L={fmt(first.lower)} mean={fmt(first.mean)} U={fmt(first.upper)}"
    results.append(("sample_bounds", count, args.trials, detail))

    rows = [(name, "pass" if bad == 0 else "FAIL", bad, checked, d) for name, bad, checked, d in results]
    emit(out, rc.fmt, ["check", "status", "violations", "checked", "detail"], rows)
    failed = [r for r in rows if r[2]]
    if failed:
        raise PropertyViolation(f"{failed[0][0]} check failed: {failed[0][4]}")
    return EXIT_OK


def cmd_sample_bounds(args, out) -> int:
    if (args.samples is None) == (args.data is None):
        raise UsageError("give exactly one of --samples or --data")
    if args.samples is not None:
        values = parse_float_list(args.samples)
    else:
        try:
            values = list(read_sample_file(args.data))
        except OSError as exc:
            raise UsageError(f"cannot read data file: {exc}") from None
    if not values:
        raise UsageError("sample is empty")
    args.data = None
    args.dist = "normal"  # the reference distribution plays no role here
    args.params = None
    rc = build_config(args, n_hint=len(values))
    if rc.weights.n != len(values):
        raise UsageError(f"sample has {len(values)} values but weights have length {rc.weights.n}")
    rep = sample_mean_bounds(values, rc.weights)
    emit(out, rc.fmt, ["lower", "mean", "upper"], [(rep.lower, rep.sample_mean, rep.upper)], single=True)
    return EXIT_OK


def cmd_optimize(args, out) -> int:
    rc = build_config(args)
    n = args.n if args.n is not None else 3
    gaps = parse_fraction_list(args.gap)
    if len(gaps) != 1:
        raise UsageError("--gap takes a single value")
    w = min_distance_weights(rc.dist, n, gaps[0], args.denominator, rc.cfg, workers=rc.threads)
    rows = [(i, v, f"{round(v * args.denominator)}/{args.denominator}") for i, v in enumerate(w, start=1)]
    emit(out, rc.fmt, ["i", "weight", "fraction"], rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dist", choices=["uniform", "normal", "exp", "empirical"], default="normal")
    common.add_argument("--params", help="a,b for uniform or rate for exp")
    common.add_argument("--data", help="newline-delimited sample file (empirical)")
    common.add_argument("--n", type=int, help="sample size of the order statistics")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--tol", type=float, help="quadrature absolute tolerance (overrides $OSBOUND_TOL)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    common.add_argument("--threads", type=int, default=1)

    def weight_source(p, required):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--weights", help="comma-separated weights; fractions like 5/9 allowed")
        g.add_argument("--m", type=int, help="use the weight sequence p(m)")
        g.add_argument("--uniform", action="store_true", help="uniform weights 1/n")

    parser = argparse.ArgumentParser(prog="osbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="grid of x, H_n(x), F(x), K_n(x)")
    weight_source(p, True)
    p.add_argument("--points", type=int, default=401)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("distance", parents=[common], help="L1 or squared-L2 distance between K_n and H_n")
    weight_source(p, True)
    p.add_argument("--metric", choices=["l1", "l2"], default="l1")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("table", parents=[common], help="Delta_m table over a list of m")
    p.add_argument("--m-list", help="comma-separated m values")
    p.add_argument("--paper-table", action="store_true", help="show the published values alongside")
    p.set_defaults(func=cmd_table, weights=None, m=None, uniform=False)

    p = sub.add_parser("verify", parents=[common], help="envelope, nesting and sample-bound checks")
    weight_source(p, False)
    p.add_argument("--q-weights", help="weights q with p majorized by q (default 1,0,...,0)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--points", type=int, default=10_001)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample-bounds", parents=[common], help="X^L, mean, X^U for one sample")
    weight_source(p, True)
    p.add_argument("--samples", help="comma-separated sample values")
    p.set_defaults(func=cmd_sample_bounds)

    p = sub.add_parser("optimize", parents=[common], help="grid search for the closest envelopes at a given gap")
    p.add_argument("--gap", required=True)
    p.add_argument("--denominator", type=int, required=True)
    p.set_defaults(func=cmd_optimize, weights=None, m=None, uniform=False)

    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("points", "trials"):
        if getattr(args, name, 1) < 1:
            print(f"error: --{name} must be >= 1", file=err)
            return EXIT_USAGE
    try:
        return args.func(args, out)
    except PropertyViolation as exc:
        print(f"violation: {exc}", file=err)
        return EXIT_VIOLATION
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=err)
        return EXIT_VIOLATION
    except (UsageError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
