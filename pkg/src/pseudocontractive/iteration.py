"""Picard orbits of piecewise-affine maps and what can be read off them."""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .analysis import InequalityVariant, ParamPoint, contraction_report
from .errors import RejectedInputError, UndefinedMapError
from .metric import EUCLIDEAN, MEMBERSHIP_TOL, as_point, convex_set_from_dict

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True, eq=False)
class Piece:
    """``x -> matrix @ x + offset`` on ``region`` (``None`` means everywhere)."""

    matrix: np.ndarray
    offset: np.ndarray
    region: object = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim == 0:
            m = m.reshape(1, 1)
        b = np.array(self.offset, dtype=float).reshape(-1)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != b.size:
            raise RejectedInputError(
                f"piece matrix {m.shape} and offset ({b.size},) are inconsistent")
        if not (np.all(np.isfinite(m)) and np.all(np.isfinite(b))):
            raise RejectedInputError("piece coefficients must be finite")
        if self.region is not None and self.region.dim != b.size:
            raise RejectedInputError(
                f"piece region has dimension {self.region.dim}, map has {b.size}")
        m.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", b)

    def __eq__(self, other):
        return (isinstance(other, Piece) and np.array_equal(self.matrix, other.matrix)
                and np.array_equal(self.offset, other.offset) and self.region == other.region)

    __hash__ = None

    def to_dict(self):
        d = {"matrix": self.matrix.tolist(), "offset": self.offset.tolist()}
        if self.region is not None:
            d["region"] = self.region.to_dict()
        return d


@dataclass(frozen=True, eq=False)
class MapDef:
    """Piecewise-affine self-map; the first piece whose region contains x applies."""

    pieces: tuple

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if not pieces:
            raise RejectedInputError("a map needs at least one piece")
        dims = {p.offset.size for p in pieces}
        if len(dims) != 1:
            raise RejectedInputError(f"pieces disagree on dimension: {sorted(dims)}")
        for p in pieces[:-1]:
            if p.region is None:
                raise RejectedInputError("an 'everywhere' piece may only be the last piece")
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def affine(cls, matrix, offset):
        return cls((Piece(matrix, offset),))

    @property
    def dim(self):
        return self.pieces[0].offset.size

    @property
    def globally_affine(self):
        return len(self.pieces) == 1 and self.pieces[0].region is None

    def __call__(self, x):
        x = as_point(x, self.dim)
        for p in self.pieces:
            if p.region is None or p.region.contains(x, MEMBERSHIP_TOL):
                return as_point(p.matrix @ x + p.offset)
        raise UndefinedMapError(f"point {x.tolist()} lies outside every piece of the map")

    def __eq__(self, other):
        return isinstance(other, MapDef) and self.pieces == other.pieces

    __hash__ = None

    def to_dict(self):
        return {"pieces": [p.to_dict() for p in self.pieces]}

    @classmethod
    def from_dict(cls, d):
        pieces = []
        for pd in d["pieces"]:
            region = pd.get("region")
            if region in (None, "everywhere"):
                region = None
            else:
                region = convex_set_from_dict(region)
            pieces.append(Piece(pd["matrix"], pd["offset"], region))
        return cls(tuple(pieces))


def _frozen(a):
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class IterationTrace:
    points: np.ndarray
    step_distances: np.ndarray
    pair_points: np.ndarray = None
    pair_distances: np.ndarray = None
    reports: tuple = ()  # reports[i] belongs to n = i + 1
    metric: object = field(default=EUCLIDEAN, compare=False)

    def __len__(self):
        return self.points.shape[0]


def _orbit_points(T, x0, n_steps):
    if T.globally_affine:
        p = T.pieces[0]
        return _kernels.affine_orbit(np.ascontiguousarray(p.matrix),
                                     np.ascontiguousarray(p.offset),
                                     np.array(x0, dtype=float), int(n_steps))
    pts = np.empty((n_steps + 1, T.dim))
    pts[0] = x0
    for k in range(n_steps):
        pts[k + 1] = T(pts[k])
    return pts


def orbit(T, x0, N, metric=EUCLIDEAN):
    """Trace of ``x0, T x0, ..., T^N x0`` with successive step distances."""
    if N < 1:
        raise RejectedInputError("N must be >= 1")
    x0 = as_point(x0, T.dim)
    pts = _orbit_points(T, x0, int(N))
    if not np.all(np.isfinite(pts)):
        raise RejectedInputError("orbit left the finite range")
    steps = metric.norms(np.diff(pts, axis=0))
    return IterationTrace(points=_frozen(pts), step_distances=_frozen(steps), metric=metric)


def pair_trace(T, x0, y0, N, schedule=None, variant=InequalityVariant.CROSS,
               metric=EUCLIDEAN, D=0.0):
    """Orbits of ``x0`` and ``y0`` with ``d(T^n x0, T^n y0)`` per n.

    With a schedule, step n (n >= 1) gets a ``ContractionReport`` comparing
    ``d(T^n x0, T^n y0)`` with ``d(x0, y0)`` under the schedule's n-th
    parameters. ``D`` feeds the cyclic variants.
    """
    tx = orbit(T, x0, N, metric)
    ty = orbit(T, y0, N, metric)
    pair = metric.norms(tx.points - ty.points)
    reports = ()
    if schedule is not None:
        vals = schedule.arrays(int(N))
        d0 = float(pair[0])
        reports = tuple(
            contraction_report(variant, _point_at(vals, n - 1),
                               d0, float(pair[n]), D)
            for n in range(1, int(N) + 1)
        )
    return IterationTrace(points=tx.points, step_distances=tx.step_distances,
                          pair_points=ty.points, pair_distances=_frozen(pair),
                          reports=reports, metric=metric)


def _point_at(vals, i):
    return ParamPoint(vals["alpha"][i], vals["beta"][i], vals["mu"][i], vals["gamma"][i])


def detect_fixed_point(trace, T, tol=DEFAULT_TOL):
    """Last orbit point ``z`` if both the last step and ``d(z, T z)`` are below ``tol``.

    ``d(z, T z)`` is always re-evaluated through ``T``; ``None`` when either
    test fails.
    """
    if len(trace) == 0:
        raise RejectedInputError("empty trace")
    z = as_point(trace.points[-1])
    last_step = float(trace.step_distances[-1]) if trace.step_distances.size else 0.0
    if last_step >= tol:
        return None
    if trace.metric.distance(z, T(z)) >= tol:
        return None
    return z


def tail_residuals(trace, m):
    """``d(T^n x, T^{n+m} x)`` for every n with ``n + m`` inside the trace."""
    m = int(m)
    if m < 1 or m >= len(trace):
        raise RejectedInputError(f"m must lie in [1, {len(trace) - 1}], got {m}")
    pts = trace.points
    return trace.metric.norms(pts[m:] - pts[:-m])


def squared_gap_deltas(trace):
    """``d^2(T^{n+1}x, T^{n+1}y) - d^2(T^n x, T^n y)`` for consecutive n."""
    if trace.pair_distances is None:
        raise RejectedInputError("trace carries no pair distances")
    sq = trace.pair_distances ** 2
    return np.diff(sq)


def compare_limits(T, starts, N, tol=DEFAULT_TOL, metric=EUCLIDEAN):
    """Run an orbit from each start; return ``(limits, coincide)``.

    ``limits`` holds the detected fixed point per start (``None`` where none was
    found); ``coincide`` is True when all were found and are pairwise within
    ``10 * tol``.
    """
    limits = []
    for x0 in starts:
        limits.append(detect_fixed_point(orbit(T, x0, N, metric), T, tol))
    found = [z for z in limits if z is not None]
    coincide = len(found) == len(limits) and all(
        metric.distance(found[0], z) <= 10 * tol for z in found[1:])
    return limits, coincide
