"""Scenario runs, trace CSVs and run reports used by the command line."""

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .analysis import (
    LIMIT_TOL,
    ParamPoint,
    Verdict,
    classify_schedule,
    k_a,
    k_b,
    point_definition_bands,
    region_xi_zero,
)
from .cyclic import CyclicPair, best_proximity_run, multi_start_agreement, verify_cyclicity
from .errors import DivisionRegimeError, RejectedInputError
from .iteration import detect_fixed_point, orbit, pair_trace

PASS, FAIL, INFO = "pass", "fail", "informational"


@dataclass
class RunReport:
    scenario: str
    status: str
    verdict: str = None
    summary: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    trace_path: str = None
    hypotheses_met: bool = True

    def to_dict(self):
        return asdict(self)

    def to_text(self):
        lines = [f"scenario: {self.scenario}", f"status: {self.status}"]
        if self.verdict is not None:
            lines.append(f"verdict: {self.verdict}")
        if not self.hypotheses_met:
            lines.append("note: theorem hypotheses unmet (metric is not uniformly convex)")
        for key, value in self.summary.items():
            lines.append(f"{key}: {_fmt_value(value)}")
        for c in self.checks:
            lines.append(f"check {c['name']}: {'pass' if c['passed'] else 'FAIL'} ({c['detail']})")
        if self.trace_path:
            lines.append(f"trace: {self.trace_path}")
        return "\n".join(lines) + "\n"


def _fmt(x):
    return "" if x is None or (isinstance(x, float) and np.isnan(x)) else format(float(x), ".17g")


def _fmt_value(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def _point_list(p):
    return [float(c) for c in np.asarray(p).reshape(-1)]


def _check(name, passed, detail):
    return {"name": name, "passed": bool(passed), "detail": detail}


def _default_start(sc):
    if "x0" in sc.start:
        return np.asarray(sc.start["x0"], dtype=float)
    if sc.sets is not None:
        return sc.sets[0].feasible_point()
    return np.zeros(sc.dim)


def trace_rows(points, step_distances, pair_distances=None, reports=()):
    """Header and rows of the trace CSV."""
    dim = points.shape[1]
    header = ["n"] + [f"x{i}" for i in range(dim)] + ["step_distance"]
    if pair_distances is not None:
        header.append("pair_distance")
    header += ["xi", "k", "residual"]
    rows = []
    for n in range(points.shape[0]):
        row = [str(n)] + [_fmt(c) for c in points[n]]
        row.append(_fmt(step_distances[n]) if n < len(step_distances) else "")
        if pair_distances is not None:
            row.append(_fmt(pair_distances[n]))
        if 1 <= n <= len(reports):
            r = reports[n - 1]
            row += [_fmt(r.xi), _fmt(r.k), _fmt(r.residual)]
        else:
            row += ["", "", ""]
        rows.append(row)
    return header, rows


def write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def run_scenario(sc, iters=100, tol=1e-9, seed=0, horizon=1000, trace_path=None):
    """Run a scenario end to end and compare against its expected values.

    Cyclic scenarios go through ``best_proximity_run``; the others through a
    plain orbit with fixed-point detection. When a second start ``y0`` is
    present the pair distances (and, with a schedule, per-step reports) are
    recorded as well.
    """
    if iters < 4:
        raise RejectedInputError("iters must be >= 4")
    x0 = _default_start(sc)
    summary, checks = {}, []
    exp = {k: v["value"] for k, v in sc.expected.items()}

    pair = None
    if sc.cyclic:
        pair = CyclicPair(sc.sets[0], sc.sets[1], sc.map, metric=sc.metric)
        cyc = verify_cyclicity(pair, sample_count=1000, seed=seed)
        summary["cyclic"] = bool(cyc)
        if not cyc:
            summary["cyclicity_counterexample"] = _point_list(cyc.counterexample)
        res = best_proximity_run(pair, x0, iters, tol)
        points = res.points
        summary.update(D_hat=res.D_hat, z=_point_list(res.z), Tz=_point_list(res.Tz),
                       even_limit_gap=res.even_limit_gap, odd_limit_gap=res.odd_limit_gap,
                       converged=res.converged)
        limit_point = res.z
        if exp:
            checks.append(_check("converged", res.converged,
                                 f"even gap {_fmt(res.even_limit_gap)}, odd gap {_fmt(res.odd_limit_gap)}"))
        if "D" in exp:
            checks.append(_check("D", abs(res.D_hat - exp["D"]) < tol,
                                 f"D_hat {_fmt(res.D_hat)} vs {_fmt(exp['D'])}"))
        if "best_proximity_pair" in exp:
            ez, etz = (np.asarray(v, dtype=float) for v in exp["best_proximity_pair"])
            err = max(float(np.max(np.abs(res.z - ez))), float(np.max(np.abs(res.Tz - etz))))
            checks.append(_check("best_proximity_pair", err < tol, f"max coordinate error {_fmt(err)}"))
    else:
        tr = orbit(sc.map, x0, iters, sc.metric)
        points = tr.points
        z = detect_fixed_point(tr, sc.map, tol)
        summary["fixed_point"] = None if z is None else _point_list(z)
        summary["last_step"] = float(tr.step_distances[-1])
        limit_point = z

    if "fixed_point" in exp:
        fp = np.asarray(exp["fixed_point"], dtype=float)
        if limit_point is None:
            checks.append(_check("fixed_point", False, "no fixed point detected"))
        else:
            err = float(np.max(np.abs(limit_point - fp)))
            is_fixed = sc.metric.distance(limit_point, sc.map(limit_point)) < tol
            checks.append(_check("fixed_point", err < tol and is_fixed,
                                 f"error {_fmt(err)}, d(z, Tz) < tol: {is_fixed}"))

    pair_distances, reports = None, ()
    if "y0" in sc.start:
        ptr = pair_trace(sc.map, x0, sc.start["y0"], iters, sc.schedule, sc.variant,
                         sc.metric, D=0.0 if pair is None else pair.D)
        pair_distances, reports = ptr.pair_distances, ptr.reports
        summary["pair_distance_first"] = float(pair_distances[0])
        summary["pair_distance_last"] = float(pair_distances[-1])
        summary["pair_distance_variation"] = float(np.ptp(pair_distances))
        if reports:
            summary["inequality_holds_all_steps"] = all(r.holds for r in reports)

    verdict = None
    if sc.schedule is not None:
        verdict = classify_schedule(sc.schedule, horizon, LIMIT_TOL).value
        if "verdict" in exp:
            checks.append(_check("verdict", verdict == exp["verdict"], f"{verdict} vs {exp['verdict']}"))

    steps = sc.metric.norms(np.diff(points, axis=0))
    if trace_path is not None:
        header, rows = trace_rows(points, steps, pair_distances, reports)
        write_csv(trace_path, header, rows)

    status = INFO if not checks else (PASS if all(c["passed"] for c in checks) else FAIL)
    return RunReport(scenario=sc.name, status=status, verdict=verdict, summary=summary,
                     checks=checks, trace_path=None if trace_path is None else str(trace_path),
                     hypotheses_met=sc.metric.uniformly_convex)


def proximity_report(sc, iters=100, tol=1e-9, seed=0, starts=10):
    """Best proximity run plus multi-start agreement for a cyclic scenario."""
    if not sc.cyclic:
        raise RejectedInputError(f"scenario {sc.name!r} has no sets A, B")
    pair = CyclicPair(sc.sets[0], sc.sets[1], sc.map, metric=sc.metric)
    x0 = _default_start(sc)
    res = best_proximity_run(pair, x0, iters, tol)
    rng = np.random.default_rng(seed)
    pts = sc.sets[0].sample(rng, starts)
    _, spread = multi_start_agreement(pair, pts, iters, tol)
    return pair, res, spread


def sweep_rows(alpha, beta, mu, steps):
    """Grid rows in alpha-major, then beta, then mu order."""
    header = ["alpha", "beta", "mu", "region", "k_a", "k_b", "gamma_floor", "definitions"]
    rows = []
    for a in np.linspace(alpha[0], alpha[1], steps):
        for b in np.linspace(beta[0], beta[1], steps):
            for m in np.linspace(mu[0], mu[1], steps):
                p = ParamPoint(a, b, m)
                try:
                    ka = k_a(p)
                except DivisionRegimeError:
                    ka = None
                try:
                    kb = k_b(p)
                except DivisionRegimeError:
                    kb = None
                floor = None if ka is None else max(0.0, 1.0 - ka)
                bands = ";".join(v.value for v in point_definition_bands(p))
                rows.append([_fmt(a), _fmt(b), _fmt(m), region_xi_zero(p).value,
                             _fmt(ka), _fmt(kb), _fmt(floor), bands])
    return header, rows


def checks_table(checks):
    """Flatten ``definition_checks`` output into printable rows."""
    rows = []
    for verdict, cs in checks.items():
        for c in cs:
            rows.append({"definition": Verdict(verdict).value, "check": c.name, "passed": c.passed,
                         "first_failure_n": c.first_failure, "detail": c.detail})
    return rows


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
