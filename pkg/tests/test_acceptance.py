"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are also
collected into an "acceptance criteria" section of the terminal summary.
"""

import subprocess
import sys

import numpy as np
import pytest

from pseudocontractive.analysis import (
    InequalityVariant,
    ParamPoint,
    ParamSchedule,
    Verdict,
    brute_force_mu,
    classify_schedule,
    contraction_constants_batch,
    empirical_mu,
    inequality_residual,
    k_a,
    k_b,
    residual_batch,
    xi_slack,
    xi_slack_batch,
)
from pseudocontractive.cyclic import (
    CyclicPair,
    best_proximity_run,
    multi_start_agreement,
    proximity_distance_trace,
)
from pseudocontractive.iteration import (
    detect_fixed_point,
    orbit,
    pair_trace,
    squared_gap_deltas,
    tail_residuals,
)
from pseudocontractive.metric import EUCLIDEAN, envelope_residuals
from pseudocontractive.scenarios import dump_scenario, get_scenario

SEED = 20240601
N_FORMULA = 100_000
N_ORACLE = 10_000


def _cyclic_pair(name):
    sc = get_scenario(name)
    return CyclicPair(sc.sets[0], sc.sets[1], sc.map, metric=sc.metric)


def test_criterion_1_constants_meet_one_together(criterion):
    rng = np.random.default_rng(SEED)
    n = 2 * N_FORMULA  # oversample, then keep the first N_FORMULA admissible points
    # dyadic beta and mu keep alpha = 1 - 2 beta (1 + mu) exact, so half the
    # sample sits exactly on the k = 1 surface and half is generic
    beta = rng.integers(1, 2 ** 20, n) / 2.0 ** 20
    mu = rng.integers(0, 2 ** 21, n) / 2.0 ** 20 - 1.0
    on_surface = rng.random(n) < 0.5
    alpha = np.where(on_surface, 1.0 - 2.0 * beta * (1.0 + mu), rng.uniform(0, 3, n))
    keep = (alpha >= 0) & (beta * (1 + 2 * mu) < 1)
    alpha, beta, mu = (v[keep][:N_FORMULA] for v in (alpha, beta, mu))
    assert alpha.size == N_FORMULA

    ka, kb = contraction_constants_batch(alpha, beta, mu)
    s = alpha + 2 * beta * (1 + mu)
    one_a = np.abs(ka - 1) <= 1e-12
    one_b = np.abs(kb - 1) <= 1e-12
    one_s = np.abs(s - 1) <= 1e-12
    ok = bool(np.all(one_a == one_b) and np.all(one_b == one_s))
    # the scalar functions agree with the batch kernel on a subsample
    idx = rng.choice(alpha.size, 2000, replace=False)
    scalar_ok = all(
        abs(k_a(ParamPoint(alpha[i], beta[i], mu[i])) - ka[i]) <= 1e-12 * max(1, abs(ka[i]))
        and abs(k_b(ParamPoint(alpha[i], beta[i], mu[i])) - kb[i]) <= 1e-12 * max(1, abs(kb[i]))
        for i in idx)
    criterion(1, "k_a = 1 <=> k_b = 1 <=> alpha + 2beta(1+mu) = 1", ok and scalar_ok,
              f"{alpha.size} samples, {int(one_s.sum())} on the surface, "
              f"{int((one_a != one_s).sum() + (one_b != one_s).sum())} disagreements")
    assert ok and scalar_ok


def test_criterion_2_slack_restores_inequality(criterion):
    rng = np.random.default_rng(SEED + 1)
    n = N_FORMULA
    variants = list(InequalityVariant)
    which = rng.integers(0, len(variants), n)
    alpha, beta = rng.uniform(0, 3, n), rng.uniform(0, 2, n)
    mu, gamma = rng.uniform(-1, 2, n), rng.uniform(0, 1, n)
    d_xy, d_t, D = rng.uniform(0, 5, n), rng.uniform(0, 5, n), rng.uniform(0, 3, n)
    # exact zeros exercise the degenerate corners
    d_xy[rng.random(n) < 0.02] = 0.0
    d_t[rng.random(n) < 0.02] = 0.0

    worst, zero_rule_ok = np.inf, True
    for j, v in enumerate(variants):
        m = which == j
        xi, raw = xi_slack_batch(v, alpha[m], beta[m], mu[m], d_xy[m], d_t[m])
        res = residual_batch(v, alpha[m], beta[m], mu[m], d_xy[m], d_t[m], xi, gamma[m], D[m])
        worst = min(worst, float(res.min()))
        zero_rule_ok &= bool(np.all((xi == 0.0) == (raw <= 0.0)) and np.all(xi >= 0))

    # scalar path on a subsample
    scalar_ok = True
    for i in rng.choice(n, 3000, replace=False):
        v = variants[which[i]]
        p = ParamPoint(alpha[i], beta[i], mu[i], gamma[i])
        xi = xi_slack(v, p, d_xy[i], d_t[i], D[i])
        _, holds = inequality_residual(v, p, d_xy[i], d_t[i], xi, D[i])
        scalar_ok &= holds
    ok = worst >= -1e-12 and zero_rule_ok and scalar_ok
    criterion(2, "xi_slack makes inequality_residual hold; xi = 0 iff raw <= 0", ok,
              f"{n} samples, min residual {worst:.3g}")
    assert ok


def test_criterion_3_mu_matches_grid_oracle(criterion):
    rng = np.random.default_rng(SEED + 2)
    n = N_ORACLE
    x, y, u, v = (rng.normal(size=(n, 3)) for _ in range(4))
    # parallel and antiparallel image differences sit on the envelope edges
    k = n // 10
    v[:k] = 0.0
    u[:k] = rng.uniform(-2, 2, (k, 1)) * (x[:k] - y[:k])
    # zero image difference: the degenerate case
    u[k:k + 50] = v[k:k + 50]
    d_xy = np.linalg.norm(x - y, axis=1)
    d_t = np.linalg.norm(u - v, axis=1)
    d_diff = np.linalg.norm((x - y) - (u - v), axis=1)

    env = np.array([envelope_residuals(EUCLIDEAN, *p) for p in zip(x, y, u, v)])
    got = np.array([empirical_mu(a, b, c) for a, b, c in zip(d_xy, d_t, d_diff)])
    oracle = brute_force_mu(d_xy, d_t, d_diff, step=1e-6)
    err = float(np.max(np.abs(got - oracle)))
    ok = bool(env.min() >= -1e-12 and not np.isnan(oracle).any() and err <= 1e-5)
    criterion(3, "empirical_mu matches the 1e-6 rho-grid oracle", ok,
              f"{n} triples, max error {err:.2e}, min envelope slack {env.min():.2e}")
    assert ok


def test_criterion_4_fixed_point_reproduction(criterion):
    sc = get_scenario("s1")
    tr = orbit(sc.map, sc.start["x0"], 60)
    z = detect_fixed_point(tr, sc.map, 1e-9)
    first = int(np.argmax(np.abs(tr.points[:, 0] - 2.0) < 1e-9))
    tails = [float(tail_residuals(tr, m)[-10:].max()) for m in (1, 2, 3)]
    pt = pair_trace(sc.map, sc.start["x0"], sc.start["y0"], 60)
    deltas = float(np.abs(squared_gap_deltas(pt)[-10:]).max())
    ok = (z is not None and abs(z[0] - 2.0) < 1e-9 and first <= 60
          and max(tails) < 1e-8 and deltas < 1e-8)
    criterion(4, "s1 converges to 2", ok,
              f"within 1e-9 from n={first}, tail residuals {max(tails):.1e}, squared-gap deltas {deltas:.1e}")
    assert ok


def test_criterion_5_best_proximity_reproduction(criterion):
    pair = _cyclic_pair("s3")
    res = best_proximity_run(pair, [1.0, 1.0], 100)
    z_err = float(np.max(np.abs(res.z - [0.0, 1.0])))
    tz_err = float(np.max(np.abs(res.Tz - [0.0, -1.0])))
    trace = proximity_distance_trace(pair, [1.0, 1.0], 100)
    decreasing = bool(np.all(np.diff(trace) <= 0))
    starts = pair.A.sample(np.random.default_rng(SEED + 5), 10)
    _, spread = multi_start_agreement(pair, starts, 100)
    ok = (abs(res.D_hat - 2.0) < 1e-8 and z_err < 1e-6 and tz_err < 1e-6
          and decreasing and abs(trace[-1] - 2.0) < 1e-6
          and res.even_limit_gap < 1e-8 and res.odd_limit_gap < 1e-8 and spread < 1e-5)
    criterion(5, "s3 best proximity pair (0,1), (0,-1) at D = 2", ok,
              f"D_hat {res.D_hat:.12g}, z err {z_err:.1e}, Tz err {tz_err:.1e}, "
              f"gaps {res.even_limit_gap:.1e}/{res.odd_limit_gap:.1e}, 10-start spread {spread:.1e}")
    assert ok


def test_criterion_6_intersecting_sets(criterion):
    sc = get_scenario("s4")
    pair = _cyclic_pair("s4")
    res = best_proximity_run(pair, sc.start["x0"], 100)
    z = detect_fixed_point(orbit(sc.map, sc.start["x0"], 100), sc.map, 1e-9)
    ok = (res.D_hat == 0.0 and abs(res.z[0] - 1.5) < 1e-9 and abs(res.Tz[0] - 1.5) < 1e-9
          and z is not None and abs(z[0] - 1.5) < 1e-9)
    criterion(6, "s4 has D = 0 and fixed point 1.5", ok, f"D_hat {res.D_hat}, z {res.z[0]:.15g}")
    assert ok


def test_criterion_7_classifier_regimes(criterion):
    cases = [
        (ParamSchedule("one_plus_c_over_n", {"alpha": [1, 1], "beta": 0.3, "mu": [-1, 0.5]}),
         Verdict.STRICT_PSEUDO),
        (ParamSchedule("one_plus_c_over_n", {"alpha": [0.5, 1], "beta": [1, -1], "mu": -0.8}),
         Verdict.CONTRACTIVE),
        (ParamSchedule.constant(2, 0, 0), Verdict.UNCLASSIFIED),
    ]
    got = [classify_schedule(s, 1000, 1e-6) for s, _ in cases]
    ok = got == [v for _, v in cases]
    criterion(7, "classify_schedule examples at horizon 1000", ok, ", ".join(v.value for v in got))
    assert ok


def test_criterion_8_isometries(criterion):
    variations = {}
    for name in ("s2", "s5"):
        sc = get_scenario(name)
        pt = pair_trace(sc.map, sc.start["x0"], sc.start["y0"], 100, metric=sc.metric)
        variations[name] = float(np.ptp(pt.pair_distances))
    pair = _cyclic_pair("s2")
    res = best_proximity_run(pair, [1.0], 100)
    realised = pair.metric.distance(res.z, res.Tz)
    ok = max(variations.values()) < 1e-12 and realised == pair.D == 2.0
    criterion(8, "isometries keep pair distances constant; s2 realises d = D = 2", ok,
              f"variation s2 {variations['s2']:.1e}, s5 {variations['s5']:.1e}, d(z, Tz) {realised}")
    assert ok


def _cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "pseudocontractive.cli", *args],
                          capture_output=True, cwd=cwd)


def test_criterion_9_cli_contract(criterion, tmp_path):
    runs = []
    for i in range(2):
        d = tmp_path / f"r{i}"
        d.mkdir()
        p = _cli("run", "--scenario", "s3", "--iters", "60", "--out", "trace.csv", "--format", "json", cwd=d)
        runs.append((p.returncode, p.stdout, (d / "trace.csv").read_bytes(),
                     (d / "trace.csv.report.json").read_bytes()))
    sweeps = [_cli("sweep", "--alpha", "0:2", "--beta", "0:0.9", "--mu", "-1:1", "--steps", "3",
                   cwd=tmp_path).stdout for _ in range(2)]

    sc = get_scenario("s1")
    sc.expected["fixed_point"]["value"] = [2.5]
    dump_scenario(sc, tmp_path / "wrong.json")
    failing = _cli("run", "--scenario", "wrong.json", cwd=tmp_path).returncode
    bad_input = _cli("run", "--scenario", "missing.json", cwd=tmp_path).returncode

    ok = (runs[0] == runs[1] and runs[0][0] == 0 and sweeps[0] == sweeps[1]
          and sweeps[0].count(b"\n") == 28 and failing == 1 and bad_input == 2)
    criterion(9, "CLI output is byte-identical across runs; exit codes 0/1/2", ok,
              f"run identical {runs[0] == runs[1]}, sweep identical {sweeps[0] == sweeps[1]}, "
              f"failing expectation -> {failing}, bad input -> {bad_input}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
