"""Two-set cyclic maps: cyclicity checks, cyclic constants and best proximity runs.

A map ``T`` on ``A ∪ B`` is cyclic when it sends ``A`` into ``B`` and ``B``
into ``A``. The even iterates of a start in ``A`` stay in ``A``; when they
converge, their limit ``z`` together with ``T z`` is a best proximity pair:
``d(z, T z) = dist(A, B)``.
"""

from dataclasses import dataclass

import numpy as np

from .analysis import k_a, k_b
from .errors import CyclicityError, RejectedInputError, UndefinedMapError
from .iteration import DEFAULT_TOL
from .metric import EUCLIDEAN, MEMBERSHIP_TOL, as_point, set_distance

GAP_TAIL = 10


@dataclass(frozen=True, eq=False)
class CyclicPair:
    """Sets ``A``, ``B``, a map ``T`` and their cached gap ``D``."""

    A: object
    B: object
    T: object
    D: float = None
    metric: object = EUCLIDEAN

    def __post_init__(self):
        if not (self.A.dim == self.B.dim == self.T.dim):
            raise RejectedInputError(
                f"dimensions disagree: A {self.A.dim}, B {self.B.dim}, T {self.T.dim}")
        if self.D is None:
            object.__setattr__(self, "D", set_distance(self.A, self.B))
        elif self.D < 0:
            raise RejectedInputError("D must be >= 0")


@dataclass(frozen=True)
class CyclicityResult:
    ok: bool
    counterexample: np.ndarray = None
    side: str = None  # set the counterexample was drawn from

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class ProximityResult:
    z: np.ndarray
    Tz: np.ndarray
    D_hat: float
    even_limit_gap: float
    odd_limit_gap: float
    converged: bool
    points: np.ndarray = None

    @property
    def proximity_gap(self):
        """``|d(z, Tz) - D_hat|``."""
        return abs(float(np.linalg.norm(self.z - self.Tz)) - self.D_hat)


def _maps_into(T, x, target, tol):
    try:
        return target.contains(T(x), tol)
    except UndefinedMapError:
        return False


def verify_cyclicity(pair, sample_count=1000, seed=0, tol=MEMBERSHIP_TOL):
    """Spot-check ``T(A) ⊂ B`` and ``T(B) ⊂ A``.

    Anchor points of each set (corners, endpoints) are tested first, then
    ``sample_count`` seeded samples per set. Returns the first violation found.
    """
    if sample_count < 1:
        raise RejectedInputError("sample_count must be >= 1")
    rng = np.random.default_rng(seed)
    for side, src, dst in (("A", pair.A, pair.B), ("B", pair.B, pair.A)):
        candidates = list(src.anchors()) + list(src.sample(rng, sample_count))
        for x in candidates:
            if not _maps_into(pair.T, x, dst, tol):
                return CyclicityResult(False, as_point(x), side)
    return CyclicityResult(True)


def cyclic_k(p, expansive_step):
    """Cyclic contraction constant: the expansive-step form when ``expansive_step``
    is set, the nonexpansive-step form otherwise."""
    return k_b(p) if expansive_step else k_a(p)


def gamma_floor(p, expansive_step=False):
    """Smallest admissible gap weight ``max(0, 1 - k)``."""
    return max(0.0, 1.0 - cyclic_k(p, expansive_step))


def gamma_from_contraction(delta, k, beta):
    """Gap weight ``delta (1 - k)(1 - beta)`` for contractive steps.

    Vanishes faster than ``1 - beta`` whenever ``k -> 1``. A single scalar
    ``delta`` is used for the whole schedule.
    """
    if delta < 0:
        raise RejectedInputError("delta must be >= 0")
    if not (0.0 <= k <= 1.0):
        raise RejectedInputError(f"k must lie in [0, 1], got {k}")
    if not (0.0 <= beta <= 1.0):
        raise RejectedInputError(f"beta must lie in [0, 1], got {beta}")
    return delta * (1.0 - k) * (1.0 - beta)


def gamma_admissible(p, nonexpansive_step):
    """A nonexpansive step with ``beta == 1`` must carry ``gamma == 0``."""
    return not (nonexpansive_step and p.beta == 1.0 and p.gamma != 0.0)


def _start_side(pair, x0):
    if pair.A.contains(x0):
        return "A"
    if pair.B.contains(x0):
        return "B"
    raise RejectedInputError(f"start {x0.tolist()} lies in neither A nor B")


def cyclic_orbit(pair, x0, N, tol=MEMBERSHIP_TOL):
    """Orbit of ``x0`` checking at every step that the image lands in the other set.

    Returns ``(points, side)`` where ``side`` is the set ``x0`` starts in.
    """
    x0 = as_point(x0, pair.T.dim)
    side = _start_side(pair, x0)
    sets = {"A": pair.A, "B": pair.B}
    other = {"A": "B", "B": "A"}
    pts = np.empty((int(N) + 1, x0.size))
    pts[0] = x0
    cur = side
    for k in range(int(N)):
        try:
            nxt = pair.T(pts[k])
        except UndefinedMapError as exc:
            raise CyclicityError(f"map undefined at iterate {k}", index=k, point=pts[k]) from exc
        cur = other[cur]
        if not sets[cur].contains(nxt, tol):
            raise CyclicityError(
                f"iterate {k + 1} = {nxt.tolist()} left set {cur}", index=k + 1, point=nxt)
        pts[k + 1] = nxt
    pts.setflags(write=False)
    return pts, side


def _tail_gap(pts, start, metric):
    idx = np.arange(start, pts.shape[0] - 2, 2)[-GAP_TAIL:]
    if idx.size == 0:
        return float("nan")
    return float(np.max(metric.norms(pts[idx + 2] - pts[idx])))


def best_proximity_run(pair, x0, N, tol=DEFAULT_TOL):
    """Iterate a cyclic map and read off the best proximity pair.

    ``z`` is the last iterate lying in ``A``: the last even iterate for a start
    in ``A``, the last odd one for a start in ``B``. The run counts as
    converged when the largest step between successive even (and odd) iterates
    over the last ten is below ``tol`` and ``|d(z, T z) - D| < tol``.
    """
    if N < 4:
        raise RejectedInputError("N must be >= 4")
    metric = pair.metric
    pts, side = cyclic_orbit(pair, x0, N)
    last_even = N if N % 2 == 0 else N - 1
    last_odd = N if N % 2 == 1 else N - 1
    z = as_point(pts[last_even] if side == "A" else pts[last_odd])
    tz = pair.T(z)
    if not pair.B.contains(tz):
        raise CyclicityError(f"T z = {tz.tolist()} is not in B", index=None, point=tz)
    even_gap = _tail_gap(pts, 0, metric)
    odd_gap = _tail_gap(pts, 1, metric)
    d_hat = float(pair.D)
    converged = (even_gap < tol and odd_gap < tol
                 and abs(metric.distance(z, tz) - d_hat) < tol)
    return ProximityResult(z=z, Tz=tz, D_hat=d_hat, even_limit_gap=even_gap,
                           odd_limit_gap=odd_gap, converged=bool(converged), points=pts)


def proximity_distance_trace(pair, x0, N):
    """``d(T^n x0, T^{n+1} x0)`` for n = 0..N-1; tends to ``D`` for convergent runs."""
    pts, _ = cyclic_orbit(pair, x0, N)
    return pair.metric.norms(np.diff(pts, axis=0))


def multi_start_agreement(pair, starts, N, tol=DEFAULT_TOL):
    """Best proximity runs from several starts; returns ``(results, spread)``.

    ``spread`` is the largest pairwise distance between the ``z`` values. Small
    spread is empirical evidence for uniqueness of the best proximity point;
    nothing is asserted beyond that.
    """
    results = [best_proximity_run(pair, x0, N, tol) for x0 in starts]
    zs = np.array([r.z for r in results])
    diff = zs[:, None, :] - zs[None, :, :]
    spread = float(np.max(np.linalg.norm(diff, axis=2))) if len(zs) else 0.0
    return results, spread
