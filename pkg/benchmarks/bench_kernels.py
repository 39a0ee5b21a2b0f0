"""Time the numba and numpy paths of each array kernel against each other.

    python benchmarks/bench_kernels.py [--repeat 5]

The numba functions are compiled (or loaded from cache) before timing.
"""

import argparse
import timeit

import numpy as np

from pseudocontractive import _kernels as K


def _cases(rng):
    n = 1_000_000
    a, b, m = rng.uniform(0, 3, n), rng.uniform(0, 0.9, n), rng.uniform(-1, 1, n)
    x, t, xi = rng.uniform(0, 5, n), rng.uniform(0, 5, n), rng.uniform(0, 1, n)
    g, dd = rng.uniform(0, 1, n), rng.uniform(0, 2, n)
    k = 2000
    d_xy, d_t = rng.uniform(0, 3, k), rng.uniform(0, 3, k)
    d_diff = rng.uniform(np.abs(d_xy - d_t), d_xy + d_t)
    M = rng.normal(size=(4, 4)) * 0.3
    c, x0 = rng.normal(size=4), rng.normal(size=4)
    return {
        "xi_raw (1e6)": ("xi_raw", (a, b, m, x, t, False)),
        "residual (1e6)": ("residual", (a, b, m, g, x, t, xi, dd, False, True)),
        "contraction_constants (1e6)": ("contraction_constants", (a, b, m)),
        "mu_grid_oracle (2e3, step 1e-6)": ("mu_grid_oracle", (d_xy, d_t, d_diff, 1e-6)),
        "affine_orbit (4-dim, 1e5 steps)": ("affine_orbit", (M, c, x0, 100_000)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<34}{'numpy ms':>11}{'numba ms':>11}{'speedup':>9}")
    for label, (name, call_args) in _cases(rng).items():
        fast, slow = getattr(K, f"{name}_numba"), getattr(K, f"{name}_numpy")
        fast(*call_args)  # compile / load cache
        t_np = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        print(f"{label:<34}{t_np * 1e3:>11.2f}{t_nb * 1e3:>11.2f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
