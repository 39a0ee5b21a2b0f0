"""Slacks, contraction constants and parameter-region predicates.

The parameterised inequality compares ``d_T = d(T^n x, T^n y)`` with
``d = d(x, y)``::

    d_T^2 <= alpha d^2 + beta (d^2 + d_T^2) + 2 mu beta L + xi (+ gamma D^2)

where the last term ``L`` is the cross product ``d * d_T`` or the square
``d_T^2`` depending on the variant, and the ``gamma D^2`` term appears only in
the cyclic variants (``D`` being the gap between the two sets). ``xi`` is the
smallest nonnegative slack that makes the inequality true.

Schedules are classified on a finite horizon; limits are judged on a tail
window (see ``tail_limit``).
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import (
    BranchMismatchError,
    DivisionRegimeError,
    InconsistentDistancesError,
    RejectedInputError,
)

RESIDUAL_TOL = 1e-12
LIMIT_TOL = 1e-6
MIN_TAIL = 20


class InequalityVariant(str, Enum):
    """Which inequality a slack or residual refers to."""

    CROSS = "cross"
    SQUARED = "squared"
    CYCLIC_CROSS = "cyclic_cross"
    CYCLIC_SQUARED = "cyclic_squared"

    @property
    def squared(self):
        return self in (InequalityVariant.SQUARED, InequalityVariant.CYCLIC_SQUARED)

    @property
    def cyclic(self):
        return self in (InequalityVariant.CYCLIC_CROSS, InequalityVariant.CYCLIC_SQUARED)


class Branch(str, Enum):
    NONEXPANSIVE = "A_nonexpansive_step"
    EXPANSIVE = "B_expansive_step"

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper()
        if key in ("A", "A_NONEXPANSIVE_STEP", "NONEXPANSIVE"):
            return cls.NONEXPANSIVE
        if key in ("B", "B_EXPANSIVE_STEP", "EXPANSIVE"):
            return cls.EXPANSIVE
        raise RejectedInputError(f"unknown branch {value!r}")


class Region(str, Enum):
    """Disjunct of the zero-slack parameter region that a point falls in."""

    D1_LOW_BETA = "D1_low_beta"
    D2_HIGH_BETA = "D2_high_beta"
    D3_MU_BAND = "D3_mu_band"
    NONE = "none"


class Verdict(str, Enum):
    STRICT_CONTRACTIVE = "StrictContractiveIS"
    CONTRACTIVE = "ContractiveIS"
    STRICT_PSEUDO = "StrictPseudoIS"
    PSEUDO = "PseudoIS"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class ParamPoint:
    alpha: float
    beta: float
    mu: float
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "mu", "gamma"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise RejectedInputError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if self.alpha < 0:
            raise RejectedInputError(f"alpha must be >= 0, got {self.alpha}")
        if self.beta < 0:
            raise RejectedInputError(f"beta must be >= 0, got {self.beta}")
        if self.mu < -1:
            raise RejectedInputError(f"mu must be >= -1, got {self.mu}")
        if self.gamma < 0:
            raise RejectedInputError(f"gamma must be >= 0, got {self.gamma}")


@dataclass(frozen=True)
class ContractionReport:
    xi: float
    residual: float
    k: float
    branch: Branch
    holds: bool


# ---------------------------------------------------------------------------
# pointwise formulas


def empirical_mu(d_xy, d_t, d_diff, tol=1e-9):
    """Smallest rho in [-1, 1] with d_diff^2 <= d_xy^2 + d_t^2 + 2 rho d_xy d_t.

    ``d_diff`` is the distance between the difference vectors ``x - y`` and
    ``T^n x - T^n y``. When ``d_xy * d_t`` vanishes every rho is feasible and
    -1 is returned.
    """
    if min(d_xy, d_t, d_diff) < 0:
        raise RejectedInputError("distances must be nonnegative")
    scale = tol * max(1.0, (d_xy + d_t) ** 2)
    if d_diff ** 2 < (d_xy - d_t) ** 2 - scale or d_diff ** 2 > (d_xy + d_t) ** 2 + scale:
        raise InconsistentDistancesError(
            f"distances ({d_xy}, {d_t}, {d_diff}) violate the norm envelope")
    prod = d_xy * d_t
    if prod < 1e-12:
        return -1.0
    rho = (d_diff ** 2 - d_xy ** 2 - d_t ** 2) / (2.0 * prod)
    return min(1.0, max(-1.0, rho))


def brute_force_mu(d_xy, d_t, d_diff, step=1e-6):
    """Grid-scan counterpart of ``empirical_mu`` over arrays of distance triples.

    Returns the first feasible point of the grid ``-1, -1 + step, ..., 1`` (NaN
    where no grid point is feasible). Only feasibility tests are used, no
    algebraic inversion.
    """
    arrs = [np.ascontiguousarray(np.atleast_1d(v), dtype=float) for v in (d_xy, d_t, d_diff)]
    return _kernels.mu_grid_oracle(*arrs, float(step))


def xi_slack(variant, p, d_xy, d_t, D=0.0):
    """Slack ``max(0, (1-beta) d_t^2 - (alpha+beta) d_xy^2 - 2 mu beta L)``.

    ``D`` is accepted for signature symmetry with the cyclic variants; the
    ``gamma D^2`` term is never folded into the slack.
    """
    variant = InequalityVariant(variant)
    last = d_t * d_t if variant.squared else d_xy * d_t
    raw = (1.0 - p.beta) * d_t * d_t - (p.alpha + p.beta) * d_xy * d_xy - 2.0 * p.mu * p.beta * last
    return max(0.0, raw)


def cyclic_slack_excess(p, xi, D):
    """``xi - gamma D^2``, the quantity that must vanish along a cyclic orbit."""
    return xi - p.gamma * D * D


def inequality_residual(variant, p, d_xy, d_t, xi, D=0.0):
    """Right-hand side minus left-hand side of the chosen inequality.

    Returns ``(residual, holds)`` with ``holds`` meaning residual >= -1e-12.
    """
    variant = InequalityVariant(variant)
    last = d_t * d_t if variant.squared else d_xy * d_t
    rhs = p.alpha * d_xy * d_xy + p.beta * (d_xy * d_xy + d_t * d_t) + 2.0 * p.mu * p.beta * last + xi
    if variant.cyclic:
        rhs += p.gamma * D * D
    residual = rhs - d_t * d_t
    return residual, residual >= -RESIDUAL_TOL


def asymptotic_excess(p, d_xy, d_t):
    """``(1 - beta(1+2mu)) d_t^2 - (alpha+beta) d_xy^2``; its limsup must be <= 0
    for a map to be asymptotically pseudocontractive in the intermediate sense."""
    return (1.0 - p.beta * (1.0 + 2.0 * p.mu)) * d_t * d_t - (p.alpha + p.beta) * d_xy * d_xy


def k_a(p):
    """Nonexpansive-step constant ``(alpha + beta(1+2mu)) / (1-beta)``."""
    if p.beta >= 1.0:
        raise DivisionRegimeError(f"nonexpansive-step constant needs beta < 1, got {p.beta}")
    return (p.alpha + p.beta * (1.0 + 2.0 * p.mu)) / (1.0 - p.beta)


def k_b(p):
    """Expansive-step constant ``(alpha + beta) / (1 - beta(1+2mu))``."""
    den = 1.0 - p.beta * (1.0 + 2.0 * p.mu)
    if den <= 0.0:
        raise DivisionRegimeError(f"expansive-step constant needs beta(1+2mu) < 1, got {1.0 - den}")
    return (p.alpha + p.beta) / den


def limit_sum(p):
    """``alpha + 2 beta (1 + mu)``; the constants equal 1 exactly when this is 1."""
    return p.alpha + 2.0 * p.beta * (1.0 + p.mu)


def _ratio(num, den):
    # num / den with den >= 0; a zero denominator sends the bound to +-inf
    if den > 0:
        return num / den
    if num > 0:
        return math.inf
    if num < 0:
        return -math.inf
    return 0.0


def zero_slack_bands(p, d_xy=None):
    """Endpoints ``(low, mid, high)`` of the mu-bands of the zero-slack region.

    ``low = -(alpha+beta)/(2beta)``, ``mid = (1-alpha-2beta)/(2beta)``,
    ``high = (1-beta)/(2beta)``. With ``d_xy`` given, ``mid`` is replaced by its
    distance-carrying form ``(1-alpha-2beta)/(2 beta d_xy)`` in the first band
    only, returned as a fourth value.
    """
    two_b = 2.0 * p.beta
    low = _ratio(-(p.alpha + p.beta), two_b)
    mid = _ratio(1.0 - p.alpha - 2.0 * p.beta, two_b)
    high = _ratio(1.0 - p.beta, two_b)
    mid_d = mid if d_xy is None else _ratio(1.0 - p.alpha - 2.0 * p.beta, two_b * d_xy)
    return low, mid, high, mid_d


def d1_band_nonempty(p):
    low, mid, _, _ = zero_slack_bands(p)
    return low <= mid


def region_xi_zero(p, d_xy=None):
    """Which disjunct of the zero-slack region contains ``p``.

    First match wins, in the order D1, D2, D3. ``beta == 0`` is the degenerate
    D1 case, nonempty exactly when ``alpha <= 1``. Passing ``d_xy`` uses the
    distance-carrying upper end for D1.
    """
    if p.beta == 0.0:
        return Region.D1_LOW_BETA if p.alpha <= 1.0 else Region.NONE
    low, mid, high, mid_d = zero_slack_bands(p, d_xy)
    if p.beta < 1.0 and low <= p.mu <= mid_d:
        return Region.D1_LOW_BETA
    if p.beta > 1.0 and p.mu < low:
        return Region.D2_HIGH_BETA
    if mid <= p.mu <= high:
        return Region.D3_MU_BAND
    return Region.NONE


def bound_check(branch, p, d_xy, d_t, xi):
    """Check the per-branch squared-distance bound.

    Branch A (``d_t <= d_xy``): ``d_t^2 <= k_a d_xy^2 + xi/(1-beta)``.
    Branch B (``d_t >= d_xy``): ``d_t^2 <= k_b d_xy^2 + xi/(1-beta(1+2mu))``.

    The bound follows from the inequality only when ``mu >= 0``; for negative
    ``mu`` it can fail even though the inequality holds.
    """
    branch = Branch.coerce(branch)
    if branch is Branch.NONEXPANSIVE:
        if d_t > d_xy or p.beta >= 1.0:
            raise BranchMismatchError("branch A needs d_t <= d_xy and beta < 1")
        k, den = k_a(p), 1.0 - p.beta
    else:
        den = 1.0 - p.beta * (1.0 + 2.0 * p.mu)
        if d_t < d_xy or den <= 0.0:
            raise BranchMismatchError("branch B needs d_t >= d_xy and beta(1+2mu) < 1")
        k = k_b(p)
    bound = k * d_xy * d_xy + xi / den
    return d_t * d_t <= bound + RESIDUAL_TOL * (1.0 + d_t * d_t)


def step_branch(d_xy, d_t):
    """Strictly shrinking steps are nonexpansive, everything else expansive."""
    return Branch.NONEXPANSIVE if d_t < d_xy else Branch.EXPANSIVE


def branch_k(p, branch, squared=False):
    """Constant for the given branch; squared-term variants always use the expansive form.
    NaN when the denominator is not positive."""
    try:
        if squared or branch is Branch.EXPANSIVE:
            return k_b(p)
        return k_a(p)
    except DivisionRegimeError:
        return math.nan


def contraction_report(variant, p, d_xy, d_t, D=0.0):
    variant = InequalityVariant(variant)
    xi = xi_slack(variant, p, d_xy, d_t, D)
    residual, holds = inequality_residual(variant, p, d_xy, d_t, xi, D)
    branch = step_branch(d_xy, d_t)
    return ContractionReport(xi=xi, residual=residual, k=branch_k(p, branch, variant.squared),
                             branch=branch, holds=holds)


# ---------------------------------------------------------------------------
# batch forms (kernel backed)


def _batch(*arrays):
    out = np.broadcast_arrays(*[np.asarray(a, dtype=float) for a in arrays])
    return [np.array(a, dtype=float).reshape(-1) for a in out]


def xi_slack_batch(variant, alpha, beta, mu, d_xy, d_t):
    """Vectorised ``xi_slack``; returns ``(xi, raw)``."""
    variant = InequalityVariant(variant)
    a, b, m, x, t = _batch(alpha, beta, mu, d_xy, d_t)
    raw = _kernels.xi_raw(a, b, m, x, t, variant.squared)
    return np.maximum(raw, 0.0), raw


def residual_batch(variant, alpha, beta, mu, d_xy, d_t, xi, gamma=0.0, D=0.0):
    variant = InequalityVariant(variant)
    a, b, m, x, t, s, g, dd = _batch(alpha, beta, mu, d_xy, d_t, xi, gamma, D)
    return _kernels.residual(a, b, m, g, x, t, s, dd, variant.squared, variant.cyclic)


def contraction_constants_batch(alpha, beta, mu):
    """Vectorised ``(k_a, k_b)`` with NaN where a denominator is not positive."""
    a, b, m = _batch(alpha, beta, mu)
    return _kernels.contraction_constants(a, b, m)


# ---------------------------------------------------------------------------
# schedules

_FAMILIES = ("constant", "one_plus_c_over_n", "geometric_decay_to_limit", "explicit_table")
_NAMES = ("alpha", "beta", "mu", "gamma")


@dataclass(frozen=True)
class ParamSchedule:
    """n-indexed parameter sequences, n = 1, 2, ...

    ``params`` maps each of alpha, beta, mu (and optionally gamma) to a
    family-specific spec:

    ``constant``
        a number.
    ``one_plus_c_over_n``
        ``[base, c]`` giving ``base + c/n``, or a number for a constant.
    ``geometric_decay_to_limit``
        ``[limit, start, ratio]`` giving ``limit + (start-limit) ratio^(n-1)``,
        or a number.
    ``explicit_table``
        a list of values for n = 1..len, or a number.

    ``declared_limits`` optionally overrides the analytic limits.
    """

    family: str
    params: dict
    declared_limits: dict = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise RejectedInputError(f"unknown schedule family {self.family!r}")
        for name in ("alpha", "beta", "mu"):
            if name not in self.params:
                raise RejectedInputError(f"schedule needs a {name!r} entry")
        unknown = set(self.params) - set(_NAMES)
        if unknown:
            raise RejectedInputError(f"unknown schedule parameters {sorted(unknown)}")
        for name, spec in self.params.items():
            self._validate_spec(name, spec)

    def _validate_spec(self, name, spec):
        if np.isscalar(spec):
            return
        spec = list(spec)
        if self.family == "one_plus_c_over_n" and len(spec) != 2:
            raise RejectedInputError(f"{name}: expected [base, c]")
        if self.family == "geometric_decay_to_limit":
            if len(spec) != 3 or not abs(spec[2]) < 1:
                raise RejectedInputError(f"{name}: expected [limit, start, ratio] with |ratio| < 1")
        if self.family == "constant":
            raise RejectedInputError(f"{name}: constant schedules take numbers")
        if self.family == "explicit_table" and len(spec) == 0:
            raise RejectedInputError(f"{name}: empty table")

    @classmethod
    def constant(cls, alpha, beta, mu, gamma=0.0):
        return cls("constant", {"alpha": alpha, "beta": beta, "mu": mu, "gamma": gamma})

    def _component(self, name, n):
        spec = self.params.get(name, 0.0)
        if np.isscalar(spec):
            return np.full(n.shape, float(spec))
        if self.family == "one_plus_c_over_n":
            base, c = spec
            return base + c / n
        if self.family == "geometric_decay_to_limit":
            lim, start, ratio = spec
            return lim + (start - lim) * float(ratio) ** (n - 1)
        table = np.asarray(spec, dtype=float)
        if n.size and n.max() > table.size:
            raise RejectedInputError(f"{name}: table has {table.size} entries, n={int(n.max())} requested")
        return table[n.astype(int) - 1]

    def arrays(self, horizon):
        """Parameter arrays for n = 1..horizon, validated against ParamPoint ranges."""
        if horizon < 1:
            raise RejectedInputError("horizon must be >= 1")
        n = np.arange(1, horizon + 1, dtype=float)
        out = {name: self._component(name, n) for name in _NAMES}
        for name, lo in (("alpha", 0.0), ("beta", 0.0), ("mu", -1.0), ("gamma", 0.0)):
            bad = np.flatnonzero(~(out[name] >= lo) | ~np.isfinite(out[name]))
            if bad.size:
                raise RejectedInputError(
                    f"{name} at n={bad[0] + 1} is {out[name][bad[0]]}, must be finite and >= {lo}")
        out["n"] = n
        return out

    def point(self, n):
        vals = self.arrays(n)
        return ParamPoint(*(float(vals[k][-1]) for k in _NAMES))

    def limits(self):
        """Declared limits if given, else analytic ones (None for tables)."""
        if self.declared_limits is not None:
            return dict(self.declared_limits)
        if self.family == "explicit_table":
            lims = {}
            for name in _NAMES:
                spec = self.params.get(name, 0.0)
                lims[name] = float(spec) if np.isscalar(spec) else None
            return lims
        lims = {}
        for name in _NAMES:
            spec = self.params.get(name, 0.0)
            lims[name] = float(spec) if np.isscalar(spec) else float(spec[0])
        return lims

    def to_dict(self):
        d = {"family": self.family, "params": {k: (v if np.isscalar(v) else list(v))
                                               for k, v in self.params.items()}}
        if self.declared_limits is not None:
            d["limits"] = dict(self.declared_limits)
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["family"], dict(d["params"]), d.get("limits"))


def tail_window(horizon):
    return max(MIN_TAIL, horizon // 5)


def tail_limit(values, n):
    """Limit estimate from a tail window.

    Fits ``L + c1 (n0/n) + c2 (n0/n)^2`` by least squares over the window and
    returns ``(L, fit_error)``, where ``fit_error`` is the largest residual of
    the fit. Sequences approaching their limit like polynomials in 1/n, or
    geometrically, are fitted to rounding error; oscillating or drifting
    sequences leave a large ``fit_error``.
    """
    values = np.asarray(values, dtype=float)
    if np.ptp(values) == 0.0:
        return float(values[-1]), 0.0
    u = n[0] / np.asarray(n, dtype=float)
    basis = np.column_stack([np.ones_like(u), u, u * u])
    coef, *_ = np.linalg.lstsq(basis, values, rcond=None)
    err = float(np.max(np.abs(basis @ coef - values)))
    return float(coef[0]), err


def limit_condition(schedule, horizon, tol=LIMIT_TOL):
    """Whether ``alpha_n + 2 beta_n (1 + mu_n)`` stays within ``tol`` of 1 on the tail window."""
    w = tail_window(horizon)
    if horizon < w:
        raise RejectedInputError(f"horizon {horizon} shorter than the tail window {w}")
    v = schedule.arrays(horizon)
    s = v["alpha"] + 2.0 * v["beta"] * (1.0 + v["mu"])
    return bool(np.all(np.abs(s[-w:] - 1.0) < tol))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    first_failure: int = None  # n at which a per-n condition first fails
    detail: str = ""


_DEFINITION_ORDER = (Verdict.STRICT_CONTRACTIVE, Verdict.CONTRACTIVE,
                     Verdict.STRICT_PSEUDO, Verdict.PSEUDO)


def _per_n(name, mask, n):
    bad = np.flatnonzero(~mask)
    if bad.size:
        return Check(name, False, int(n[bad[0]]))
    return Check(name, True)


def _mu_upper(beta):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(beta > 0, (1.0 - beta) / (2.0 * np.where(beta > 0, beta, 1.0)), np.inf)


def definition_checks(schedule, horizon, tol=LIMIT_TOL, mu_band="limit_root"):
    """Per-definition list of checks on ``schedule`` over n = 1..horizon.

    Keys are the four non-trivial verdicts. Range conditions are checked for
    every n; limits are estimated with ``tail_limit`` on the last
    ``tail_window(horizon)`` indices and compared with ``tol``. Closed ends of
    a limit range admit ``tol`` of slack, open ends require a margin of
    ``tol``.

    ``mu_band`` picks the upper end of the mu-limit range in the strict
    contractive definition: ``"limit_root"`` uses ``(1-alpha-2beta)/(2beta)``,
    ``"capped"`` uses ``(1-beta)/(2beta) * min(1, 1/(alpha+beta))``.
    """
    if mu_band not in ("limit_root", "capped"):
        raise RejectedInputError(f"unknown mu_band {mu_band!r}")
    w = tail_window(horizon)
    if horizon < w:
        raise RejectedInputError(f"horizon {horizon} shorter than the tail window {w}")
    v = schedule.arrays(horizon)
    n, alpha, beta, mu = v["n"], v["alpha"], v["beta"], v["mu"]
    lim, fit = {}, {}
    for name in ("alpha", "beta", "mu"):
        lim[name], fit[name] = tail_limit(v[name][-w:], n[-w:])

    def converges(name):
        ok = fit[name] < tol
        return Check(f"{name}_n converges", ok, None, f"limit≈{lim[name]:.12g}, fit error {fit[name]:.3g}")

    def tends_to(name, target):
        ok = fit[name] < tol and abs(lim[name] - target) < tol
        return Check(f"{name}_n -> {target:g}", ok, None, f"limit≈{lim[name]:.12g}")

    def limit_in(name, lo, hi, label):
        ok = fit[name] < tol and lim[name] >= lo - tol and lim[name] < hi - tol
        return Check(f"lim {name}_n in {label}", ok, None, f"limit≈{lim[name]:.12g}, range [{lo:.12g}, {hi:.12g})")

    mu_ok = (mu >= -1.0) & (mu < _mu_upper(beta))
    beta_const = Check("beta_n constant", bool(np.all(beta == beta[0])),
                       None if np.all(beta == beta[0]) else int(n[np.argmax(beta != beta[0])]))
    a_lim, b_lim = lim["alpha"], lim["beta"]

    if mu_band == "limit_root":
        band_hi = _ratio(1.0 - a_lim - 2.0 * b_lim, 2.0 * b_lim)
    else:
        cap = min(1.0, 1.0 / (a_lim + b_lim)) if a_lim + b_lim > 0 else 1.0
        band_hi = _ratio(1.0 - b_lim, 2.0 * b_lim) * cap if b_lim > 0 else math.inf

    checks = {
        Verdict.STRICT_CONTRACTIVE: [
            _per_n("alpha_n >= 0", alpha >= 0, n),
            beta_const,
            _per_n("beta_n in [0,1)", (beta >= 0) & (beta < 1), n),
            _per_n("mu_n in [-1,(1-beta)/(2beta))", mu_ok, n),
            converges("alpha"),
            limit_in("alpha", 0.0, 1.0, "[0,1)"),
            limit_in("mu", -1.0, band_hi, "[-1, band)"),
        ],
        Verdict.CONTRACTIVE: [
            _per_n("alpha_n >= 0", alpha >= 0, n),
            _per_n("beta_n in [0,1)", (beta >= 0) & (beta < 1), n),
            _per_n("mu_n in [-1,(1-beta_n)/(2beta_n))", mu_ok, n),
            limit_in("alpha", 0.0, 1.0, "[0,1)"),
            tends_to("beta", 1.0),
            limit_in("mu", -1.0, -(1.0 + a_lim) / 2.0, "[-1,-(1+alpha)/2)"),
        ],
        Verdict.STRICT_PSEUDO: [
            beta_const,
            _per_n("beta_n in [0,1)", (beta >= 0) & (beta < 1), n),
            _per_n("mu_n in [-1,(1-beta)/(2beta))", mu_ok, n),
            _per_n("alpha_n >= 1", alpha >= 1, n),
            tends_to("alpha", 1.0),
            tends_to("mu", -1.0),
        ],
        Verdict.PSEUDO: [
            _per_n("beta_n in [0,1]", (beta >= 0) & (beta <= 1), n),
            _per_n("mu_n in [-1,(1-beta_n)/(2beta_n))", mu_ok, n),
            _per_n("alpha_n >= 1", alpha >= 1, n),
            tends_to("alpha", 1.0),
            tends_to("beta", 1.0),
            tends_to("mu", -1.0),
        ],
    }
    return checks


def classify_schedule(schedule, horizon, tol=LIMIT_TOL, mu_band="limit_root"):
    """First definition (strict contractive, contractive, strict pseudo, pseudo)
    whose checks all pass, else ``Verdict.UNCLASSIFIED``."""
    checks = definition_checks(schedule, horizon, tol, mu_band)
    for verdict in _DEFINITION_ORDER:
        if all(c.passed for c in checks[verdict]):
            return verdict
    return Verdict.UNCLASSIFIED


def point_definition_bands(p):
    """Definitions whose per-n ranges contain the single point ``p``
    (limits ignored: the point is read as its own limit)."""
    mu_hi = _ratio(1.0 - p.beta, 2.0 * p.beta)
    in_mu = -1.0 <= p.mu < mu_hi
    bands = []
    if p.alpha < 1.0 and p.beta < 1.0 and -1.0 <= p.mu < _ratio(1.0 - p.alpha - 2.0 * p.beta, 2.0 * p.beta) and in_mu:
        bands.append(Verdict.STRICT_CONTRACTIVE)
    if p.alpha < 1.0 and p.beta < 1.0 and in_mu and p.mu < -(1.0 + p.alpha) / 2.0:
        bands.append(Verdict.CONTRACTIVE)
    if p.alpha >= 1.0 and p.beta < 1.0 and in_mu:
        bands.append(Verdict.STRICT_PSEUDO)
    if p.alpha >= 1.0 and p.beta <= 1.0 and in_mu:
        bands.append(Verdict.PSEUDO)
    return bands
