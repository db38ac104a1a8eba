"""Command-line front end.

Subcommands::

    bound     evaluate the two-sided bound at one (delta, delta')
    optimize  search (delta, delta') and report the optimum with its bound
    simulate  Monte Carlo CDF of the likelihood ratio against chi-square
    oracle    exact (or Monte Carlo) Pr(Lambda_n < a)
    compare   T1/T2 gap curves along an n grid
    profile   optimized mu along an n grid and its log-log slope

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import bounds, optimizer, oracle
from .errors import WilksBoundError
from .model import new_model


class UsageError(Exception):
    pass


def parse_number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def parse_int(text: str) -> int:
    value = parse_number(text)
    if not math.isfinite(value) or value != int(value):
        raise UsageError(f"not an integer: {text!r}")
    return int(value)


def parse_grid(text: str) -> list[float]:
    """``start:stop:logK`` / ``start:stop:linK`` or a comma list."""
    parts = text.split(":")
    if len(parts) == 1:
        return [parse_number(p) for p in text.split(",") if p]
    if len(parts) != 3:
        raise UsageError(f"grid {text!r} is not start:stop:logK or start:stop:linK")
    start, stop = parse_number(parts[0]), parse_number(parts[1])
    kind, count = parts[2][:3], parts[2][3:]
    if kind not in ("log", "lin") or not count.isdigit() or int(count) < 1:
        raise UsageError(f"grid spacing {parts[2]!r} is not logK or linK")
    k = int(count)
    if kind == "log":
        if start <= 0 or stop <= 0:
            raise UsageError("log grids need positive end points")
        return list(np.geomspace(start, stop, k))
    return list(np.linspace(start, stop, k))


def parse_theta(text: str) -> list[float]:
    return [parse_number(p) for p in text.split(",")]


def _plain(obj: Any) -> Any:
    """Dataclasses and numpy values to JSON-ready Python objects."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _flatten(obj: Any, prefix: str = "") -> dict:
    out = {}
    for key, value in _plain(obj).items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, f"{name}."))
        else:
            out[name] = value
    return out


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def render(payload: Any, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_plain(payload), indent=2) + "\n"
    buf = io.StringIO()
    header = list(rows[0]) if rows else []
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(h)) for h in header])
    return buf.getvalue()


def _require(args, *names: str) -> None:
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise UsageError(f"{args.command} requires --{name}")


def cmd_bound(args, m):
    _require(args, "n", "a")
    if args.optimize:
        opt = optimizer.optimize_theorem(m, args.n, args.a, args.direction)
        delta, delta_prime = opt.delta, opt.delta_prime
    else:
        _require(args, "delta", "delta-prime")
        delta, delta_prime = args.delta, args.delta_prime
    res = bounds.theorem_bounds(m, args.n, args.a, delta, delta_prime)
    return res, [_flatten(res)]


def cmd_optimize(args, m):
    _require(args, "n", "a")
    opt = optimizer.optimize_theorem(m, args.n, args.a, args.direction)
    res = bounds.theorem_bounds(m, args.n, args.a, opt.delta, opt.delta_prime)
    payload = {"optimum": opt, "bound": res}
    return payload, [_flatten(payload)]


def cmd_simulate(args, m):
    _require(args, "n", "trials", "a-grid")
    rows = oracle.wilks_curve(m, args.n, args.trials, args.seed, args.a_grid)
    payload = {"n": args.n, "trials": args.trials, "seed": args.seed, "rows": rows}
    return payload, [_flatten(r) for r in rows]


def cmd_oracle(args, m):
    _require(args, "n", "a")
    if args.trials is not None:
        est = oracle.mc_cdf(m, args.n, args.a, args.trials, args.seed, args.alpha)
    else:
        est = oracle.exact_cdf(m, args.n, args.a)
    return est, [_flatten(est)]


def cmd_compare(args, m):
    _require(args, "n-grid", "a")
    rows = []
    for n in args.n_grid:
        opt = optimizer.optimize_theorem(m, n, args.a, "upper-min")
        if args.k is None:
            k, _ = optimizer.optimize_k(m.r, n, args.a)
        else:
            k = args.k
        cmp = bounds.comparator_t1_t2(m, n, args.a, opt.delta, opt.delta_prime, k)
        rows.append(
            {
                "n": n,
                "T1": cmp.t1,
                "T2": cmp.t2,
                "delta": opt.delta,
                "delta_prime": opt.delta_prime,
                "k": cmp.k,
                "a_s": cmp.a_s,
            }
        )
    payload = {"a": args.a, "k_mode": "fixed" if args.k is not None else "optimized", "rows": rows}
    return payload, rows


def cmd_profile(args, m):
    _require(args, "n-grid")
    a = 1.0 if args.a is None else args.a
    prof = bounds.rate_probe(m, args.n_grid, a)
    rows = [
        {"n": int(n), "mu": mu, "delta": d, "delta_prime": dp, "dominant": dom, "slope": prof.slope}
        for n, mu, d, dp, dom in zip(prof.n, prof.mu, prof.delta, prof.delta_prime, prof.dominant)
    ]
    payload = {"slope": prof.slope, "steep": prof.steep, "rows": rows}
    return payload, rows


COMMANDS = {
    "bound": cmd_bound,
    "optimize": cmd_optimize,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
    "profile": cmd_profile,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", required=True, help="comma-separated pmf, e.g. 0.4,0.6")
    common.add_argument("--n", type=str, help="sample size (accepts 1e8)")
    common.add_argument("--n-grid", type=str, help="start:stop:logK, start:stop:linK or a,b,c")
    common.add_argument("--a", type=str, help="CDF threshold")
    common.add_argument("--a-grid", type=str)
    common.add_argument("--delta", type=str)
    common.add_argument("--delta-prime", type=str)
    common.add_argument("--k", type=str, help="fixed bracketing exponent (compare)")
    common.add_argument("--optimize", action="store_true", help="search delta, delta' (bound)")
    common.add_argument("--direction", choices=optimizer.DIRECTIONS, default="upper-min")
    common.add_argument("--trials", type=str)
    common.add_argument("--seed", type=str, default="0")
    common.add_argument("--alpha", type=str, default="0.01")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=str, help="write here instead of stdout")

    parser = argparse.ArgumentParser(prog="wilksbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _round_grid(text: str) -> list[int]:
    return [int(round(v)) for v in parse_grid(text)]


_CONVERTERS = {
    "theta": parse_theta,
    "n": parse_int,
    "n_grid": _round_grid,
    "a": parse_number,
    "a_grid": parse_grid,
    "delta": parse_number,
    "delta_prime": parse_number,
    "k": parse_number,
    "trials": parse_int,
    "seed": parse_int,
    "alpha": parse_number,
}


def _convert(args) -> None:
    for name, fn in _CONVERTERS.items():
        value = getattr(args, name)
        if value is None:
            continue
        try:
            setattr(args, name, fn(value))
        except UsageError as exc:
            raise UsageError(f"--{name.replace('_', '-')}: {exc}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _convert(args)
        m = new_model(args.theta)
        payload, rows = COMMANDS[args.command](args, m)
    except UsageError as exc:
        parser.error(str(exc))
    except WilksBoundError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = render(payload, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
