"""Command-line front end.

    cascade-lab simulate  --b 2 --H 0.7 --n 12 --seed 7 --out path.csv
    cascade-lab simulate  --preset fig5 --seed 7 --out fig5.csv
    cascade-lab walk      --b 2 --H 0.25 --n 12 --seed 7
    cascade-lab remainder --b 2 --H 0.7 --n 6 --m 8 --seed 7
    cascade-lab moments   --b 2 --H 0.5 --q 2 --n 1..8
    cascade-lab moments   --b 2 --limit --p 1..4
    cascade-lab verify    --suite exact --out report.json
    cascade-lab figures   --seed 7 --out figs/

Exit status: 0 ok, 1 a verification check failed, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import io
from .cascade import derive_params, simulate_path
from .errors import CascadeError
from .fclt import clt_walk, remainder_path
from .figures import PRESETS, figure_series
from .moments import limit_even_moment, moment_sequence
from .verify import SUITES, run_suites

FORMATS = ("csv", "json", "svg")


@dataclass
class RunConfig:
    """Everything that determines an output file (the output location excluded)."""

    command: str
    b: int | None = None
    H: float | None = None
    n: str | None = None
    m: int | None = None
    q: int | None = None
    p: str | None = None
    limit: bool = False
    trials: int | None = None
    seed: int | None = None
    format: str = "csv"
    preset: str | None = None
    suite: list | None = None
    jmin: int | None = None
    jmax: int | None = None

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if v is not None}
        if isinstance(d.get("H"), float) and not math.isfinite(d["H"]):
            d["H"] = str(d["H"])
        return d


class UsageError(Exception):
    pass


def parse_exponent(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid exponent {text!r}") from None


def parse_range(text: str) -> list[int]:
    """``"5"`` -> [5]; ``"1..8"`` -> [1, ..., 8] (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"invalid integer range {text!r}") from None


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            io.write_text(out, text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from None


def _series_output(series, fmt, config, out):
    if fmt == "svg":
        _emit(io.polyline_svg(series, config), out)
    elif fmt == "json":
        payload = {"config": config,
                   "series": [{"label": lab, "t": list(map(float, g)), "value": list(map(float, v))}
                              for lab, g, v in series]}
        _emit(io.report_json(payload), out)
    elif len(series) == 1:
        _, grid, values = series[0]
        _emit(io.path_csv(grid, values, config), out)
    else:
        if out in (None, "-"):
            raise UsageError("multi-path CSV output needs --out")
        base = Path(out)
        for label, grid, values in series:
            _emit(io.path_csv(grid, values, config), base.with_name(f"{base.stem}_{label}{base.suffix}"))


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _single_n(args) -> int:
    ns = parse_range(args.n)
    if len(ns) != 1:
        raise UsageError("--n must be a single integer here")
    return ns[0]


def cmd_simulate(args, config):
    if args.preset:
        series = figure_series(args.preset, seed=args.seed if args.seed is not None else 7)
        return _series_output(series, args.format, config, args.out)
    _need(args, "b", "H", "n")
    n = _single_n(args)
    path = simulate_path(derive_params(args.b, args.H), n, args.seed or 0)
    _series_output([(f"n{n}", path.grid, path.values)], args.format, config, args.out)


def cmd_walk(args, config):
    _need(args, "b", "H", "n")
    n = _single_n(args)
    walk = clt_walk(derive_params(args.b, args.H), n, args.seed or 0)
    _series_output([(f"n{n}", walk.grid, walk.values)], args.format, config, args.out)


def cmd_remainder(args, config):
    _need(args, "b", "H", "n", "m")
    n = _single_n(args)
    rem = remainder_path(derive_params(args.b, args.H), n, args.m, args.seed or 0)
    _series_output([(f"n{n}_m{args.m}", rem.grid, rem.values)], args.format, config, args.out)


def cmd_moments(args, config):
    _need(args, "b")
    rows = []
    if args.limit:
        _need(args, "p")
        for p in parse_range(args.p):
            rows.append((2 * p, "inf", limit_even_moment(args.b, 2 * p)))
    else:
        _need(args, "H", "q", "n")
        ns = parse_range(args.n)
        seq = moment_sequence(args.b, args.H, args.q, max(ns))
        rows = [(args.q, n, float(seq[args.q, n])) for n in ns]
    if args.format == "json":
        _emit(io.report_json({"config": config,
                              "rows": [{"q": q, "n": n, "value": v} for q, n, v in rows]}), args.out)
    else:
        _emit(io.moment_csv(rows, config), args.out)


def cmd_verify(args, config) -> int:
    suites = args.suite or list(SUITES)
    trials = args.trials or 10_000
    seed = 1 if args.seed is None else args.seed
    t0 = time.perf_counter()
    checks, reports = run_suites(suites, trials=trials, seed=seed,
                                 jmin=args.jmin, jmax=args.jmax)
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    failed = [c.name for c in checks if not c.passed]
    report = {
        "config": config,
        "passed": ok,
        "failed": failed,
        "checks": [c.to_dict() for c in checks],
        "reports": {k: r.to_dict() for k, r in reports.items()},
    }
    _emit(io.report_json(report), args.out or "verify-report.json")
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed "
          f"in {time.perf_counter() - t0:.1f} s", file=sys.stderr)
    if failed:
        print("failing checks: " + ", ".join(failed), file=sys.stderr)
    return 0 if ok else 1


def cmd_figures(args, config):
    outdir = Path(args.out or "figures")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create {outdir}: {exc}") from None
    seed = 7 if args.seed is None else args.seed
    for name in PRESETS:
        series = figure_series(name, seed=seed)
        cfg = dict(config, preset=name, seed=seed)
        _emit(io.polyline_svg(series, cfg), outdir / f"{name}.svg")
        for label, grid, values in series:
            _emit(io.path_csv(grid, values, cfg), outdir / f"{name}_{label}.csv")


COMMANDS = {
    "simulate": cmd_simulate,
    "walk": cmd_walk,
    "remainder": cmd_remainder,
    "moments": cmd_moments,
    "verify": cmd_verify,
    "figures": cmd_figures,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cascade-lab",
        description="Simulate bilateral canonical cascades, compute exact moments and "
        "verify their limit theorems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--b", type=int)
        sp.add_argument("--H", type=parse_exponent)
        sp.add_argument("--n", type=str, help="level, or a range lo..hi for moments")
        sp.add_argument("--m", type=int, help="proxy depth of the remainder")
        sp.add_argument("--trials", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=FORMATS, default="csv")
        sp.add_argument("--preset", choices=sorted(PRESETS))
        sp.add_argument("--suite", action="append", choices=SUITES)
        sp.add_argument("--jmin", type=int)
        sp.add_argument("--jmax", type=int)
        if name == "moments":
            sp.add_argument("--q", type=int)
            sp.add_argument("--p", type=str, help="half-orders for --limit, e.g. 1..4")
            sp.add_argument("--limit", action="store_true")
    return parser


def _glue_exponent(argv: list[str]) -> list[str]:
    # "--H -inf" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--H":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--H={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_exponent(sys.argv[1:] if argv is None else list(argv)))
    fields = {k: getattr(args, k, None) for k in RunConfig.__dataclass_fields__}
    fields["limit"] = bool(fields.get("limit"))
    config = RunConfig(**fields).to_dict()
    try:
        status = COMMANDS[args.command](args, config)
    except (UsageError, CascadeError, ValueError) as exc:
        print(f"cascade-lab: error: {exc}", file=sys.stderr)
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
