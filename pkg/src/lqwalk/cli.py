"""
Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 resource cap exceeded,
4 strict reproduction found a row outside tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager, redirect_stderr, redirect_stdout
from typing import Iterator, Optional, Sequence, TextIO

from .analysis import (
    DEFAULT_PATIENCE,
    MAX_AMPLITUDES,
    CompareEntry,
    WeightScheme,
    compare_coins,
    evolve_trace,
    first_peak,
    weight_sweep,
)
from .config import ConfigError, RunConfig
from .manifest import TABLES
from .reproduce import FAIL, reproduce_rows
from .walk import CoinFamily, ResourceCapError, WalkError

EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_STRICT = 0, 2, 3, 4

REPRODUCE_COLUMNS = [
    "grid", "k", "weight", "prob_paper", "prob_computed", "steps_paper",
    "steps_computed", "prob_diff", "steps_diff", "status",
]


def fmt_prob(p: Optional[float]) -> str:
    return "" if p is None else f"{p:.6f}"


def fmt_weight(l: float) -> str:
    return f"{l:.12g}"


def _origin(text: str) -> tuple[int, int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"origin must look like X,Y, got {text!r}") from None
    return x, y


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=None, help="vertices per axis")
    common.add_argument("--cluster", type=int, default=3, help="marked cluster side (odd)")
    common.add_argument("--origin", type=_origin, default=(0, 0), help="cluster origin X,Y")
    common.add_argument("--coin", choices=[f.value for f in CoinFamily], default="lackadaisical")
    common.add_argument(
        "--weight", default="proposed",
        help="self-loop weight, or a scheme: " + ", ".join(s.value for s in WeightScheme),
    )
    common.add_argument("--marked-op", choices=["-D", "-I"], default=None,
                        help="marked-vertex operator for the lackadaisical coin (default -D)")
    common.add_argument("--max-steps", type=int, default=None)
    common.add_argument("--patience", type=int, default=DEFAULT_PATIENCE)
    common.add_argument("--resolution", type=float, default=1e-6)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-amplitudes", type=int, default=MAX_AMPLITUDES, help=argparse.SUPPRESS)

    parser = _Parser(prog="lqwalk", description="Lackadaisical quantum walk search on a 2D torus.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("run", parents=[common], help="emit the success-probability trace")
    sub.add_parser("peak", parents=[common], help="emit the first peak")
    sub.add_parser("sweep", parents=[common], help="sweep the self-loop weight over the proposed interval")
    p = sub.add_parser("compare", parents=[common], help="first peaks for several coin configurations")
    p.add_argument(
        "--entry", action="append", default=None,
        help="akr | grover | lackadaisical:<weight|scheme>; repeatable",
    )
    p = sub.add_parser("reproduce", parents=[common], help="re-run a published table")
    p.add_argument("table", choices=sorted(TABLES))
    p.add_argument("--strict", action="store_true", help="exit 4 if an asserted row is out of tolerance")
    p.add_argument("--include-slow", action="store_true")
    p.add_argument("--row-budget", type=float, default=None, help="seconds per row before it is skipped")
    return parser


def _config(args) -> RunConfig:
    if args.grid is None:
        raise ConfigError("grid_side is required (--grid)")
    cfg = RunConfig(
        grid_side=args.grid,
        cluster_side=args.cluster,
        cluster_origin=args.origin,
        coin_family=args.coin,
        weight=args.weight,
        max_steps=args.max_steps,
        marked_op=args.marked_op,
        patience=args.patience,
        output_format=args.format,
        output_path=args.out,
    )
    cfg.validate()
    return cfg


@contextmanager
def _sink(path: Optional[str], stdout: TextIO) -> Iterator[TextIO]:
    if path is None:
        yield stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _write_csv(out: TextIO, header: Sequence[str], rows) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_run(args, out: TextIO) -> int:
    cfg = _config(args)
    trace = evolve_trace(cfg.grid, cfg.coin, cfg.marked, cfg.resolved_max_steps(), args.max_amplitudes)
    if cfg.output_format == "json":
        json.dump({"config": cfg.to_dict(), "probs": trace.probs.tolist()}, out)
        out.write("\n")
    else:
        _write_csv(out, ["step", "probability"], ((t, fmt_prob(p)) for t, p in enumerate(trace.probs)))
    return EXIT_OK


def cmd_peak(args, out: TextIO) -> int:
    cfg = _config(args)
    peak = first_peak(
        cfg.grid, cfg.coin, cfg.marked, cfg.resolved_max_steps(),
        patience=cfg.patience, max_amplitudes=args.max_amplitudes,
    )
    if cfg.output_format == "json":
        json.dump({"config": cfg.to_dict(), **peak.to_dict()}, out)
        out.write("\n")
    else:
        _write_csv(out, ["steps", "prob", "terminated_by"], [(peak.steps, fmt_prob(peak.prob), peak.terminated_by.value)])
    return EXIT_OK


def cmd_sweep(args, out: TextIO, err: TextIO) -> int:
    if args.coin != "lackadaisical":
        raise ConfigError("sweep needs the lackadaisical coin")
    cfg = _config(args)
    if not args.resolution > 0:
        raise ConfigError(f"resolution must be > 0, got {args.resolution!r}")
    if cfg.coin.coin_dim * cfg.grid.vertex_count > args.max_amplitudes:
        raise ResourceCapError("grid exceeds the amplitude bound")
    res = weight_sweep(
        cfg.grid, cfg.marked, args.resolution, cfg.max_steps, patience=cfg.patience, jobs=args.jobs,
    )
    summary = {
        "best_weight": res.best_weight,
        "best_delta": res.best_delta,
        "best_peak": res.best_peak.to_dict(),
    }
    if cfg.output_format == "json":
        cfg_d = cfg.to_dict()
        cfg_d.pop("weight")
        cfg_d["resolution"] = args.resolution
        json.dump(
            {
                "config": cfg_d,
                "samples": [{"l": l, **p.to_dict()} for l, p in res.samples],
                "summary": summary,
            },
            out,
        )
        out.write("\n")
    else:
        _write_csv(out, ["l", "steps", "prob"], ((fmt_weight(l), p.steps, fmt_prob(p.prob)) for l, p in res.samples))
        err.write(
            f"best_weight={fmt_weight(res.best_weight)} best_delta={res.best_delta:.6e} "
            f"steps={res.best_peak.steps} prob={fmt_prob(res.best_peak.prob)} "
            f"terminated_by={res.best_peak.terminated_by.value}\n"
        )
    return EXIT_OK


def _parse_entry(text: str) -> CompareEntry:
    family, _, weight = text.partition(":")
    try:
        fam = CoinFamily(family.strip().lower())
    except ValueError:
        raise ConfigError(f"entry coin must be akr, grover or lackadaisical, got {family!r}") from None
    if fam is not CoinFamily.LACKADAISICAL:
        if weight:
            raise ConfigError(f"entry {text!r}: only the lackadaisical coin takes a weight")
        return CompareEntry(fam)
    weight = weight or "proposed"
    try:
        w = WeightScheme(weight.lower())
    except ValueError:
        try:
            w = float(weight)
        except ValueError:
            raise ConfigError(f"entry {text!r}: bad weight") from None
        if not w >= 0:
            raise ConfigError(f"entry {text!r}: weight must be >= 0")
    return CompareEntry(fam, w)


def cmd_compare(args, out: TextIO) -> int:
    cfg = _config(args)
    entries = [_parse_entry(e) for e in (args.entry or ["grover", "lackadaisical:nahimovs", "lackadaisical:giri", "lackadaisical:proposed"])]
    rows = compare_coins(cfg.grid, cfg.marked, entries, cfg.resolved_max_steps(), patience=cfg.patience, jobs=args.jobs)
    header = ["label", "weight", "prob", "steps", "terminated_by", "max_prob", "max_prob_step"]
    if cfg.output_format == "json":
        json.dump(
            [
                {"label": r.label, "weight": r.weight, "prob": r.prob, "steps": r.steps,
                 "terminated_by": r.terminated_by.value, "max_prob": r.max_prob, "max_prob_step": r.max_prob_step}
                for r in rows
            ],
            out,
        )
        out.write("\n")
    else:
        _write_csv(
            out, header,
            ((r.label, fmt_weight(r.weight), fmt_prob(r.prob), r.steps, r.terminated_by.value,
              fmt_prob(r.max_prob), r.max_prob_step) for r in rows),
        )
    return EXIT_OK


def cmd_reproduce(args, out: TextIO) -> int:
    outcomes = reproduce_rows(
        TABLES[args.table], include_slow=args.include_slow, budget=args.row_budget,
        patience=args.patience, jobs=args.jobs,
    )
    records = []
    for o in outcomes:
        r = o.row
        records.append({
            "label": r.label,
            "grid": r.N,
            "k": r.k,
            "weight": r.weight,
            "prob_paper": r.prob_published,
            "prob_computed": None if o.peak is None else o.peak.prob,
            "steps_paper": r.steps_published,
            "steps_computed": None if o.peak is None else o.peak.steps,
            "prob_diff": o.prob_diff,
            "steps_diff": o.steps_diff,
            "status": o.status,
        })
    if args.format == "json":
        json.dump(records, out)
        out.write("\n")
    else:
        def cells(d):
            return [
                d["grid"], d["k"], fmt_weight(d["weight"]), fmt_prob(d["prob_paper"]),
                fmt_prob(d["prob_computed"]), d["steps_paper"],
                "" if d["steps_computed"] is None else d["steps_computed"],
                fmt_prob(d["prob_diff"]), "" if d["steps_diff"] is None else d["steps_diff"],
                d["status"],
            ]
        _write_csv(out, REPRODUCE_COLUMNS, (cells(d) for d in records))
    if args.strict and any(o.status == FAIL for o in outcomes):
        return EXIT_STRICT
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with redirect_stderr(stderr), redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    # buffer so a failing command leaves no partial file behind
    buf = io.StringIO()
    try:
        if args.command == "run":
            code = cmd_run(args, buf)
        elif args.command == "peak":
            code = cmd_peak(args, buf)
        elif args.command == "sweep":
            code = cmd_sweep(args, buf, stderr)
        elif args.command == "compare":
            code = cmd_compare(args, buf)
        else:
            code = cmd_reproduce(args, buf)
    except (ConfigError, WalkError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_CONFIG
    except ResourceCapError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_RESOURCE
    with _sink(args.out, stdout) as fh:
        fh.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
