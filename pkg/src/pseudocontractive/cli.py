"""Command line interface.

Subcommands: ``run``, ``classify``, ``sweep``, ``proximity``. Exit codes are
0 for pass or informational runs, 1 when an expected value is missed and 2 for
input errors.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import LIMIT_TOL, ParamSchedule, classify_schedule, definition_checks
from .errors import PseudocontractiveError
from .report import (
    FAIL,
    PASS,
    checks_table,
    dumps,
    proximity_report,
    run_scenario,
    sweep_rows,
    write_csv,
)
from .scenarios import resolve_scenario

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _range(text):
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if not (lo <= hi) or any(v != v or abs(v) == float("inf") for v in (lo, hi)):
        raise argparse.ArgumentTypeError(f"range must be finite with LO <= HI, got {text!r}")
    return lo, hi


def _load_schedule(text):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    doc = json.loads(text)
    return ParamSchedule.from_dict(doc)


def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_run(args):
    sc = resolve_scenario(args.scenario)
    report = run_scenario(sc, iters=args.iters, tol=args.tol, seed=args.seed,
                          horizon=args.horizon, trace_path=args.out)
    text = dumps(report.to_dict()) if args.format == "json" else report.to_text()
    if args.out is not None:
        Path(str(args.out) + ".report.json").write_text(dumps(report.to_dict()), encoding="utf-8")
    _emit(text)
    return EXIT_FAIL if report.status == FAIL else EXIT_OK


def cmd_classify(args):
    schedule = _load_schedule(args.schedule)
    verdict = classify_schedule(schedule, args.horizon, args.tol, args.mu_band)
    rows = checks_table(definition_checks(schedule, args.horizon, args.tol, args.mu_band))
    if args.format == "json":
        _emit(dumps({"verdict": verdict.value, "horizon": args.horizon, "checks": rows}), args.out)
        return EXIT_OK
    lines = [f"verdict: {verdict.value}"]
    for r in rows:
        at = "" if r["first_failure_n"] is None else f" at n={r['first_failure_n']}"
        mark = "pass" if r["passed"] else "FAIL"
        detail = f" ({r['detail']})" if r["detail"] else ""
        lines.append(f"{r['definition']:<20} {mark:<4} {r['check']}{at}{detail}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args):
    if args.steps < 2:
        raise PseudocontractiveError("--steps must be >= 2")
    header, rows = sweep_rows(args.alpha, args.beta, args.mu, args.steps)
    if args.out is None:
        import csv

        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        write_csv(args.out, header, rows)
        sys.stdout.write(f"{len(rows)} rows written to {args.out}\n")
    return EXIT_OK


def cmd_proximity(args):
    sc = resolve_scenario(args.scenario)
    pair, res, spread = proximity_report(sc, args.iters, args.tol, args.seed, args.starts)
    dists = pair.metric.norms(res.points[1:] - res.points[:-1])
    if args.out is not None:
        write_csv(args.out, ["n", "proximity_distance"],
                  [[str(n), format(float(d), ".17g")] for n, d in enumerate(dists)])
    exp = {k: v["value"] for k, v in sc.expected.items()}
    ok = res.converged and spread < 10 * args.tol
    if "D" in exp:
        ok = ok and abs(res.D_hat - exp["D"]) < args.tol
    summary = {
        "scenario": sc.name,
        "D_hat": res.D_hat,
        "z": res.z.tolist(),
        "Tz": res.Tz.tolist(),
        "even_limit_gap": res.even_limit_gap,
        "odd_limit_gap": res.odd_limit_gap,
        "converged": res.converged,
        "multi_start_spread": spread,
        "status": PASS if ok else FAIL,
    }
    if args.format == "json":
        _emit(dumps(summary))
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in summary.items()))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    p = _Parser(prog="pseudocontractive",
                description="Contraction-constant checks, schedule classification and "
                            "fixed/best-proximity point runs for piecewise-affine maps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, out_help):
        sp.add_argument("--out", default=None, help=out_help)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("run", help="run a scenario and write its trace")
    r.add_argument("--scenario", required=True, help="built-in name (s1..s5) or scenario file")
    r.add_argument("--iters", type=int, default=100)
    r.add_argument("--tol", type=float, default=1e-9)
    r.add_argument("--horizon", type=int, default=1000)
    common(r, "trace CSV path (a .report.json is written next to it)")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("classify", help="classify a parameter schedule")
    c.add_argument("--schedule", required=True, help="schedule JSON text or file")
    c.add_argument("--horizon", type=int, default=1000)
    c.add_argument("--tol", type=float, default=LIMIT_TOL)
    c.add_argument("--mu-band", choices=("limit_root", "capped"), default="limit_root")
    common(c, "write the verdict table here instead of stdout")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sweep", help="tabulate regions and constants over a parameter grid")
    s.add_argument("--alpha", type=_range, required=True, metavar="LO:HI")
    s.add_argument("--beta", type=_range, required=True, metavar="LO:HI")
    s.add_argument("--mu", type=_range, required=True, metavar="LO:HI")
    s.add_argument("--steps", type=int, default=5)
    common(s, "CSV output path (stdout when omitted)")
    s.set_defaults(func=cmd_sweep)

    x = sub.add_parser("proximity", help="best proximity run with multi-start agreement")
    x.add_argument("--scenario", required=True)
    x.add_argument("--iters", type=int, default=100)
    x.add_argument("--tol", type=float, default=1e-9)
    x.add_argument("--starts", type=int, default=10)
    common(x, "CSV of d(T^n x, T^(n+1) x)")
    x.set_defaults(func=cmd_proximity)
    return p


_RANGE_FLAGS = ("--alpha", "--beta", "--mu")


def _glue_ranges(argv):
    # "--mu -1:1" would read "-1:1" as a flag; rewrite it as "--mu=-1:1"
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _RANGE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_ranges(argv))
    try:
        return args.func(args)
    except (PseudocontractiveError, OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
