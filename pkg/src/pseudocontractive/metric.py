"""Points, norm-induced metrics, convex sets with exact projections.

A point is a 1-D float64 numpy array with finite coordinates; ``as_point``
validates and normalises anything array-like into one. Every metric here is
induced by a norm, so it is translation invariant and homogeneous:
``d(x, y) = ||x - y||``.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleSetError, NonConvergenceError, RejectedInputError

MEMBERSHIP_TOL = 1e-9


def as_point(x, dim=None):
    """Return ``x`` as a read-only 1-D float array, checking finiteness and dimension."""
    arr = np.array(x, dtype=float).reshape(-1) if np.ndim(x) == 0 else np.array(x, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise RejectedInputError(f"a point must be a non-empty 1-D sequence, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise RejectedInputError("point coordinates must be finite")
    if dim is not None and arr.size != dim:
        raise RejectedInputError(f"dimension mismatch: expected {dim}, got {arr.size}")
    arr.setflags(write=False)
    return arr


def _same_dim(*points):
    dims = {p.size for p in points}
    if len(dims) != 1:
        raise RejectedInputError(f"dimension mismatch: {sorted(dims)}")


@dataclass(frozen=True)
class MetricDef:
    """A norm-induced metric on R^n.

    ``kind`` is one of ``euclidean``, ``p_norm`` (``p`` in [1, inf]) or
    ``weighted_euclidean`` (positive ``weights``, one per coordinate).
    """

    kind: str = "euclidean"
    p: float = 2.0
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("euclidean", "p_norm", "weighted_euclidean"):
            raise RejectedInputError(f"unknown metric kind {self.kind!r}")
        if self.kind == "p_norm" and not (self.p >= 1.0):
            raise RejectedInputError(f"p-norm needs p >= 1, got {self.p}")
        if self.kind == "weighted_euclidean":
            w = tuple(float(v) for v in self.weights)
            if not w or not all(v > 0 and np.isfinite(v) for v in w):
                raise RejectedInputError("weighted metric needs positive finite weights")
            object.__setattr__(self, "weights", w)

    def norm(self, v):
        v = np.asarray(v, dtype=float)
        if self.kind == "euclidean":
            return float(np.sqrt(np.dot(v, v)))
        if self.kind == "p_norm":
            return float(np.linalg.norm(v, ord=self.p))
        w = np.asarray(self.weights)
        if w.size != v.size:
            raise RejectedInputError(f"metric has {w.size} weights, point has {v.size} coordinates")
        return float(np.sqrt(np.dot(w * v, v)))

    def norms(self, v):
        """Row-wise norms of a 2-D array."""
        v = np.asarray(v, dtype=float)
        if self.kind == "euclidean":
            return np.sqrt(np.einsum("ij,ij->i", v, v))
        if self.kind == "p_norm":
            return np.linalg.norm(v, ord=self.p, axis=1)
        w = np.asarray(self.weights)
        return np.sqrt(np.einsum("ij,j,ij->i", v, w, v))

    def distance(self, x, y):
        x = as_point(x)
        y = as_point(y)
        _same_dim(x, y)
        return self.norm(x - y)

    @property
    def uniformly_convex(self):
        """Whether the normed space is uniformly convex (p-norms with p = 1 or inf are not)."""
        if self.kind == "p_norm":
            return 1.0 < self.p < np.inf
        return True

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind == "p_norm":
            d["p"] = "inf" if np.isinf(self.p) else self.p
        if self.kind == "weighted_euclidean":
            d["weights"] = list(self.weights)
        return d


EUCLIDEAN = MetricDef()


def distance(m, x, y):
    """Distance between ``x`` and ``y`` under metric ``m``."""
    return m.distance(x, y)


def envelope_residuals(m, x, y, u, v):
    """Slacks of the two-sided bound on the distance between difference vectors.

    With ``a = d(x, y)``, ``b = d(u, v)`` and ``c = d(x - y, u - v)`` this returns
    ``(c**2 - (a - b)**2, (a + b)**2 - c**2)``. Both are nonnegative for any
    norm-induced metric; ``u, v`` play the role of the iterated images of
    ``x, y``.
    """
    x, y, u, v = (as_point(p) for p in (x, y, u, v))
    _same_dim(x, y, u, v)
    a = m.norm(x - y)
    b = m.norm(u - v)
    c = m.norm((x - y) - (u - v))
    return c * c - (a - b) ** 2, (a + b) ** 2 - c * c


# ---------------------------------------------------------------------------
# convex sets


class ConvexSet:
    """Closed convex subset of R^n with an exact Euclidean projection."""

    kind = None
    dim = None

    def project(self, x):
        raise NotImplementedError

    def feasible_point(self):
        raise NotImplementedError

    def contains(self, x, tol=MEMBERSHIP_TOL):
        x = self._check(x)
        return float(np.linalg.norm(self.project(x) - x)) <= tol

    def anchors(self):
        """A few distinguished points of the set (corners, ends, centre)."""
        return [self.feasible_point()]

    def sample(self, rng, count):
        """Draw ``count`` points of the set (not uniformly; used for spot checks)."""
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError

    def _check(self, x):
        return as_point(x, self.dim)


@dataclass(frozen=True, eq=False)
class Box(ConvexSet):
    lower: np.ndarray
    upper: np.ndarray
    kind = "box"

    def __post_init__(self):
        lo = as_point(self.lower)
        hi = as_point(self.upper, lo.size)
        if np.any(lo > hi):
            raise InfeasibleSetError("box has lower > upper in some coordinate")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self):
        return self.lower.size

    def project(self, x):
        return as_point(np.clip(self._check(x), self.lower, self.upper))

    def feasible_point(self):
        return as_point(0.5 * (self.lower + self.upper))

    def anchors(self):
        return [self.lower, self.upper]

    def sample(self, rng, count):
        return rng.uniform(self.lower, self.upper, size=(count, self.dim))

    def to_dict(self):
        return {"kind": "box", "lower": self.lower.tolist(), "upper": self.upper.tolist()}

    def __eq__(self, other):
        return (isinstance(other, Box) and np.array_equal(self.lower, other.lower)
                and np.array_equal(self.upper, other.upper))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Ball(ConvexSet):
    center: np.ndarray
    radius: float
    kind = "ball"

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        r = float(self.radius)
        if not (r >= 0 and np.isfinite(r)):
            raise InfeasibleSetError(f"ball radius must be finite and >= 0, got {self.radius}")
        object.__setattr__(self, "radius", r)

    @property
    def dim(self):
        return self.center.size

    def project(self, x):
        x = self._check(x)
        v = x - self.center
        n = float(np.linalg.norm(v))
        if n <= self.radius:
            return x
        return as_point(self.center + v * (self.radius / n))

    def feasible_point(self):
        return self.center

    def sample(self, rng, count):
        v = rng.normal(size=(count, self.dim))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        r = self.radius * rng.uniform(size=(count, 1)) ** (1.0 / self.dim)
        return self.center + r * v

    def to_dict(self):
        return {"kind": "ball", "center": self.center.tolist(), "radius": self.radius}

    def __eq__(self, other):
        return (isinstance(other, Ball) and np.array_equal(self.center, other.center)
                and self.radius == other.radius)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Segment(ConvexSet):
    start: np.ndarray
    end: np.ndarray
    kind = "segment"

    def __post_init__(self):
        a = as_point(self.start)
        object.__setattr__(self, "start", a)
        object.__setattr__(self, "end", as_point(self.end, a.size))

    @property
    def dim(self):
        return self.start.size

    def project(self, x):
        x = self._check(x)
        d = self.end - self.start
        dd = float(np.dot(d, d))
        if dd == 0.0:
            return self.start
        t = min(1.0, max(0.0, float(np.dot(x - self.start, d)) / dd))
        if t == 0.0:
            return self.start
        if t == 1.0:
            return self.end
        return as_point(self.start + t * d)

    def feasible_point(self):
        return self.start

    def anchors(self):
        return [self.start, self.end]

    def sample(self, rng, count):
        t = rng.uniform(size=(count, 1))
        return self.start + t * (self.end - self.start)

    def to_dict(self):
        return {"kind": "segment", "start": self.start.tolist(), "end": self.end.tolist()}

    def __eq__(self, other):
        return (isinstance(other, Segment) and np.array_equal(self.start, other.start)
                and np.array_equal(self.end, other.end))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class HalfspaceIntersection(ConvexSet):
    """Polyhedron ``{x : normals @ x <= offsets}``.

    Projection enumerates active sets and keeps the KKT point, so it is exact
    but exponential in the number of halfspaces; meant for small descriptions.
    """

    normals: np.ndarray
    offsets: np.ndarray
    kind = "halfspace_intersection"
    _feasible: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        a = np.array(self.normals, dtype=float)
        if a.ndim == 1:
            a = a[None, :]
        b = np.array(self.offsets, dtype=float).reshape(-1)
        if a.ndim != 2 or a.shape[0] != b.size or a.shape[0] == 0:
            raise RejectedInputError("normals must be (m, n) with m offsets, m >= 1")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise RejectedInputError("halfspace data must be finite")
        if np.any(np.linalg.norm(a, axis=1) == 0):
            raise RejectedInputError("halfspace normals must be nonzero")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "normals", a)
        object.__setattr__(self, "offsets", b)
        object.__setattr__(self, "_feasible", self._kkt_projection(np.zeros(a.shape[1])))

    @property
    def dim(self):
        return self.normals.shape[1]

    def _kkt_projection(self, x):
        a, b = self.normals, self.offsets
        m, n = a.shape
        scale = 1.0 + float(np.max(np.abs(b))) + float(np.max(np.abs(x)))
        tol = 1e-10 * scale
        if np.all(a @ x <= b + tol):
            return as_point(x)
        best = None
        for size in range(1, min(m, n) + 1):
            for active in itertools.combinations(range(m), size):
                aa = a[list(active)]
                if np.linalg.matrix_rank(aa) < size:
                    continue
                # minimise |y - x|^2 subject to aa y = bb: y = x - aa^T lam
                lam = np.linalg.solve(aa @ aa.T, aa @ x - b[list(active)])
                if np.any(lam < -tol):
                    continue
                y = x - aa.T @ lam
                if np.all(a @ y <= b + tol):
                    dist = float(np.linalg.norm(y - x))
                    if best is None or dist < best[0]:
                        best = (dist, y)
            if best is not None:
                return as_point(best[1])
        raise InfeasibleSetError("halfspace intersection is empty")

    def project(self, x):
        return self._kkt_projection(self._check(x))

    def feasible_point(self):
        return self._feasible

    def sample(self, rng, count):
        # projections of a cloud around a feasible point
        cloud = self._feasible + rng.normal(scale=1.0, size=(count, self.dim))
        return np.array([self.project(p) for p in cloud])

    def to_dict(self):
        return {"kind": "halfspace_intersection", "normals": self.normals.tolist(),
                "offsets": self.offsets.tolist()}

    def __eq__(self, other):
        return (isinstance(other, HalfspaceIntersection)
                and np.array_equal(self.normals, other.normals)
                and np.array_equal(self.offsets, other.offsets))

    __hash__ = None


def interval(lo, hi):
    """One-dimensional box ``[lo, hi]``."""
    return Box([lo], [hi])


def convex_set_from_dict(d):
    kind = d.get("kind")
    if kind == "box":
        return Box(d["lower"], d["upper"])
    if kind == "ball":
        return Ball(d["center"], d["radius"])
    if kind == "segment":
        return Segment(d["start"], d["end"])
    if kind == "halfspace_intersection":
        return HalfspaceIntersection(d["normals"], d["offsets"])
    raise RejectedInputError(f"unknown convex set kind {kind!r}")


def project(s, x):
    """Euclidean projection of ``x`` onto the convex set ``s``."""
    return s.project(x)


def set_distance(a, b, tol=1e-10, max_iter=100_000):
    """Gap ``dist(A, B)`` estimated by alternating projections.

    Iterates ``a_{k+1} = P_A(P_B(a_k))`` from a feasible point of ``A`` until the
    displacement of ``a_k`` drops below ``tol``, then returns
    ``|a_k - P_B(a_k)|``. The distance is Euclidean, matching the projections.

    Raises
    ------
    NonConvergenceError
        If ``max_iter`` sweeps do not reach ``tol``; the current gap estimate is
        attached as ``estimate``.
    """
    if a.dim != b.dim:
        raise RejectedInputError(f"dimension mismatch: {a.dim} vs {b.dim}")
    x = a.feasible_point()
    for it in range(1, max_iter + 1):
        y = b.project(x)
        x_new = a.project(y)
        step = float(np.linalg.norm(x_new - x))
        x = x_new
        if step < tol:
            return float(np.linalg.norm(x - b.project(x)))
    raise NonConvergenceError(
        f"alternating projections did not settle within {max_iter} sweeps",
        estimate=float(np.linalg.norm(x - b.project(x))),
        iterations=max_iter,
    )
