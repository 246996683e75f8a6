"""Command-line entry point: ``run``, ``sweep`` and ``oracle``."""
from __future__ import annotations

import argparse
import csv
import datetime as dt
import io
import json
import math
import os
import sys
from dataclasses import asdict

from . import __version__
from .experiments import ExperimentConfig, Kind, sweep
from .oracle import amplitudes, max_discrepancy, probs_closed_form
from .stats import compare, sweep_summary

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

CELLS = ("00", "10", "01", "11")  # (v,u) order
COLUMNS = (
    ["alpha", "phi", "n", "gamma", "seed"]
    + [f"n{c}" for c in CELLS]
    + [f"f{c}" for c in CELLS]
    + [f"p{c}" for c in CELLS]
    + [f"d{c}" for c in CELLS]
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> list[float]:
    """``start:stop:count`` with both endpoints included."""
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:count, got {text!r}")
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.WDC_QUANTUM.value)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--phi1", type=float, default=0.0)
    p.add_argument("--alpha-grid", type=parse_grid, default=None)
    p.add_argument("--phi-grid", type=parse_grid, default=None,
                   help="for mzi the grid is the phase difference phi0 - phi1")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--gamma", type=float, default=0.99)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--carry-state", action="store_true")
    p.add_argument("--out", default=None, help="output file (default: standard output)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dlmsim", description="Event-by-event delayed-choice simulator")
    parser.add_argument("--version", action="version", version=f"dlmsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("run", "sweep"):
        _add_run_args(sub.add_parser(name, help="simulate one point or a grid"))

    o = sub.add_parser("oracle", help="quantum-theory probabilities")
    o.add_argument("--alpha", type=float, default=0.0)
    o.add_argument("--phi", type=float, default=0.0)
    o.add_argument("--degrees", action="store_true")
    o.add_argument("--method", choices=["closed-form", "matrix"], default="closed-form")
    o.add_argument("--check", action="store_true",
                   help="compare the matrix chain with the closed form on a grid")
    o.add_argument("--grid", type=int, default=64)
    return parser


def _angle(x: float, degrees: bool) -> float:
    return math.radians(x) if degrees else x


def _grids(args, parser):
    deg = args.degrees
    if args.alpha_grid is not None and args.alpha is not None:
        parser.error("--alpha and --alpha-grid are mutually exclusive")
    if args.phi_grid is not None and args.phi is not None:
        parser.error("--phi and --phi-grid are mutually exclusive")
    if args.alpha_grid is not None:
        alphas = [_angle(a, deg) for a in args.alpha_grid]
    else:
        alphas = [_angle(args.alpha or 0.0, deg)]
    if args.phi_grid is not None:
        phis = [_angle(p, deg) for p in args.phi_grid]
    elif args.kind == Kind.MZI.value:
        phis = [_angle(args.phi0, deg) - _angle(args.phi1, deg)]
    else:
        phis = [_angle(args.phi or 0.0, deg)]
    return alphas, phis


def _row(rec, cfg) -> dict:
    row = {"alpha": rec.alpha, "phi": rec.phi, "n": rec.n_pairs,
           "gamma": cfg.gamma, "seed": cfg.seed}
    for prefix, table in (("n", rec.counts.n), ("f", rec.f), ("p", rec.p), ("d", rec.delta)):
        for c in CELLS:
            v, u = int(c[0]), int(c[1])
            row[prefix + c] = table[v][u]
    return row


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = (dt.datetime.fromtimestamp(int(epoch), dt.timezone.utc) if epoch
            else dt.datetime.now(dt.timezone.utc))
    return when.isoformat(timespec="seconds")


def render(rows, base: ExperimentConfig, fmt: str, argv) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
        return buf.getvalue()
    config = asdict(base)
    config["kind"] = base.kind.value
    manifest = {
        "tool": "dlmsim",
        "version": __version__,
        "command": list(argv),
        "config": config,
        "seed": base.seed,
        "timestamp": _timestamp(),
        "columns": list(COLUMNS),
    }
    return json.dumps({"manifest": manifest, "records": rows}, indent=2) + "\n"


def cmd_run(args, parser, argv) -> int:
    if args.n < 1:
        parser.error("--n must be >= 1")
    if not 0.0 <= args.gamma < 1.0:
        parser.error(f"--gamma must lie in [0, 1), got {args.gamma}")
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must be a 64-bit unsigned integer")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    alphas, phis = _grids(args, parser)
    base = ExperimentConfig(
        kind=Kind(args.kind), alpha=alphas[0], phi=phis[0],
        phi0=_angle(args.phi0, args.degrees), phi1=_angle(args.phi1, args.degrees),
        n_pairs=args.n, gamma=args.gamma, seed=args.seed, carry_state=args.carry_state,
    )
    points = sweep(base, alphas, phis, jobs=args.jobs)
    records = [compare(pt.counts, pt.config) for pt in points]
    text = render([_row(r, pt.config) for r, pt in zip(records, points)], base, args.format, argv)

    if args.out is None:
        sys.stdout.write(text)
        report = sys.stderr
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"dlmsim: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        report = sys.stdout
    max_d, rms_d = sweep_summary(records)
    print(f"points={len(records)} max_abs_delta={max_d:.6f} rms_delta={rms_d:.6f}", file=report)
    return EXIT_OK


def _fmt_p(p: float) -> str:
    return f"{round(p, 10) + 0.0:.10g}"


def cmd_oracle(args) -> int:
    if args.check:
        if args.grid < 1:
            print("dlmsim: --grid must be >= 1", file=sys.stderr)
            return EXIT_USAGE
        worst = max_discrepancy(args.grid)
        ok = worst < 1e-12
        print(f"grid={args.grid}x{args.grid} max_discrepancy={worst:.3e} {'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else 1
    alpha, phi = _angle(args.alpha, args.degrees), _angle(args.phi, args.degrees)
    if args.method == "matrix":
        p = amplitudes(alpha, phi).probs()
    else:
        p = probs_closed_form(alpha, phi)
    print("p00,p10,p01,p11")
    print(",".join(_fmt_p(p[int(c[0])][int(c[1])]) for c in CELLS))
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle":
        return cmd_oracle(args)
    return cmd_run(args, parser, argv)


if __name__ == "__main__":
    sys.exit(main())
