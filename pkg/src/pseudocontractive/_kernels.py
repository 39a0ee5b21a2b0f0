"""Array kernels with a numba path and a pure-numpy path.

Every kernel exists twice: ``<name>_numba`` (an ``@njit`` loop) and
``<name>_numpy`` (vectorised numpy). The public name is bound to one of the
two at import time. Set ``PSEUDOCONTRACTIVE_NUMBA=0`` to force the numpy
path; the numba path is also skipped when numba cannot be imported.

Both paths must return identical results up to floating point reordering;
``tests/test_kernels.py`` checks that, and ``benchmarks/bench_kernels.py``
times them against each other.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def _flag_enabled(value):
    return value.strip().lower() not in ("0", "false", "no", "off", "")


USE_NUMBA = HAVE_NUMBA and _flag_enabled(os.environ.get("PSEUDOCONTRACTIVE_NUMBA", "1"))

# coarse stride of the two-level rho scan, in fine grid steps
_COARSE = 1000


# ---------------------------------------------------------------------------
# slack and residual of the parameterised inequalities


@njit(cache=True)
def xi_raw_numba(alpha, beta, mu, d_xy, d_t, squared):
    n = alpha.shape[0]
    out = np.empty(n)
    for i in range(n):
        if squared:
            last = d_t[i] * d_t[i]
        else:
            last = d_xy[i] * d_t[i]
        out[i] = ((1.0 - beta[i]) * d_t[i] * d_t[i]
                  - (alpha[i] + beta[i]) * d_xy[i] * d_xy[i]
                  - 2.0 * mu[i] * beta[i] * last)
    return out


def xi_raw_numpy(alpha, beta, mu, d_xy, d_t, squared):
    last = d_t * d_t if squared else d_xy * d_t
    return (1.0 - beta) * d_t * d_t - (alpha + beta) * d_xy * d_xy - 2.0 * mu * beta * last


@njit(cache=True)
def residual_numba(alpha, beta, mu, gamma, d_xy, d_t, xi, big_d, squared, cyclic):
    n = alpha.shape[0]
    out = np.empty(n)
    for i in range(n):
        if squared:
            last = d_t[i] * d_t[i]
        else:
            last = d_xy[i] * d_t[i]
        r = (alpha[i] * d_xy[i] * d_xy[i]
             + beta[i] * (d_xy[i] * d_xy[i] + d_t[i] * d_t[i])
             + 2.0 * mu[i] * beta[i] * last
             + xi[i])
        if cyclic:
            r += gamma[i] * big_d[i] * big_d[i]
        out[i] = r - d_t[i] * d_t[i]
    return out


def residual_numpy(alpha, beta, mu, gamma, d_xy, d_t, xi, big_d, squared, cyclic):
    last = d_t * d_t if squared else d_xy * d_t
    r = alpha * d_xy * d_xy + beta * (d_xy * d_xy + d_t * d_t) + 2.0 * mu * beta * last + xi
    if cyclic:
        r = r + gamma * big_d * big_d
    return r - d_t * d_t


@njit(cache=True)
def contraction_constants_numba(alpha, beta, mu):
    n = alpha.shape[0]
    ka = np.empty(n)
    kb = np.empty(n)
    for i in range(n):
        den_a = 1.0 - beta[i]
        den_b = 1.0 - beta[i] * (1.0 + 2.0 * mu[i])
        ka[i] = (alpha[i] + beta[i] * (1.0 + 2.0 * mu[i])) / den_a if den_a > 0.0 else np.nan
        kb[i] = (alpha[i] + beta[i]) / den_b if den_b > 0.0 else np.nan
    return ka, kb


def contraction_constants_numpy(alpha, beta, mu):
    den_a = 1.0 - beta
    den_b = 1.0 - beta * (1.0 + 2.0 * mu)
    with np.errstate(divide="ignore", invalid="ignore"):
        ka = np.where(den_a > 0.0, (alpha + beta * (1.0 + 2.0 * mu)) / den_a, np.nan)
        kb = np.where(den_b > 0.0, (alpha + beta) / den_b, np.nan)
    return ka, kb


# ---------------------------------------------------------------------------
# brute-force rho scan
#
# Feasibility d_diff^2 <= d_xy^2 + d_t^2 + 2 rho d_xy d_t is monotone in rho,
# so scanning coarse cells first and then the single cell holding the first
# feasible coarse point returns exactly the first feasible fine grid point.


@njit(cache=True)
def _feasible(rho, d_xy, d_t, d_diff):
    lhs = d_diff * d_diff
    rhs = d_xy * d_xy + d_t * d_t + 2.0 * rho * d_xy * d_t
    return lhs <= rhs + 1e-12 * (lhs + d_xy * d_xy + d_t * d_t)


@njit(cache=True)
def mu_grid_oracle_numba(d_xy, d_t, d_diff, step):
    n = d_xy.shape[0]
    m = int(round(2.0 / step))
    out = np.empty(n)
    for i in range(n):
        hi = -1
        j = 0
        while j <= m:
            if _feasible(-1.0 + j * step, d_xy[i], d_t[i], d_diff[i]):
                hi = j
                break
            if j == m:
                break
            j = min(j + _COARSE, m)
        if hi < 0:
            out[i] = np.nan
            continue
        lo = max(hi - _COARSE + 1, 0)
        for j in range(lo, hi + 1):
            if _feasible(-1.0 + j * step, d_xy[i], d_t[i], d_diff[i]):
                out[i] = -1.0 + j * step
                break
    return out


def _feasible_np(rho, d_xy, d_t, d_diff):
    lhs = d_diff * d_diff
    rhs = d_xy * d_xy + d_t * d_t + 2.0 * rho * d_xy * d_t
    return lhs <= rhs + 1e-12 * (lhs + d_xy * d_xy + d_t * d_t)


def mu_grid_oracle_numpy(d_xy, d_t, d_diff, step, chunk=512):
    n = d_xy.shape[0]
    m = int(round(2.0 / step))
    coarse = np.unique(np.append(np.arange(0, m + 1, _COARSE), m))
    fine_offsets = np.arange(-_COARSE + 1, 1)
    out = np.full(n, np.nan)
    for s in range(0, n, chunk):
        a, b, c = (v[s:s + chunk, None] for v in (d_xy, d_t, d_diff))
        ok = _feasible_np(-1.0 + coarse[None, :] * step, a, b, c)
        has = ok.any(axis=1)
        hi = coarse[np.argmax(ok, axis=1)]
        idx = np.maximum(hi[:, None] + fine_offsets[None, :], 0)
        fine_ok = _feasible_np(-1.0 + idx * step, a, b, c)
        first = idx[np.arange(idx.shape[0]), np.argmax(fine_ok, axis=1)]
        out[s:s + chunk] = np.where(has, -1.0 + first * step, np.nan)
    return out


# ---------------------------------------------------------------------------
# affine orbit x_{k+1} = M x_k + b


@njit(cache=True)
def affine_orbit_numba(matrix, offset, x0, n_steps):
    dim = x0.shape[0]
    pts = np.empty((n_steps + 1, dim))
    pts[0] = x0
    for k in range(n_steps):
        for r in range(dim):
            acc = offset[r]
            for c in range(dim):
                acc += matrix[r, c] * pts[k, c]
            pts[k + 1, r] = acc
    return pts


def affine_orbit_numpy(matrix, offset, x0, n_steps):
    pts = np.empty((n_steps + 1, x0.shape[0]))
    pts[0] = x0
    for k in range(n_steps):
        pts[k + 1] = matrix @ pts[k] + offset
    return pts


if USE_NUMBA:
    xi_raw = xi_raw_numba
    residual = residual_numba
    contraction_constants = contraction_constants_numba
    mu_grid_oracle = mu_grid_oracle_numba
    affine_orbit = affine_orbit_numba
else:
    xi_raw = xi_raw_numpy
    residual = residual_numpy
    contraction_constants = contraction_constants_numpy
    mu_grid_oracle = mu_grid_oracle_numpy
    affine_orbit = affine_orbit_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
