import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudocontractive.analysis import ParamSchedule
from pseudocontractive.errors import RejectedInputError, UndefinedMapError
from pseudocontractive.iteration import (
    MapDef,
    Piece,
    compare_limits,
    detect_fixed_point,
    orbit,
    pair_trace,
    squared_gap_deltas,
    tail_residuals,
)
from pseudocontractive.metric import interval

HALF = MapDef.affine([[0.5]], [0.0])
HALF_PLUS_ONE = MapDef.affine([[0.5]], [1.0])
IDENTITY = MapDef.affine([[1.0]], [0.0])
SHIFT = MapDef.affine([[1.0]], [1.0])


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return MapDef.affine([[c, -s], [s, c]], [0.0, 0.0])


def test_orbit_examples():
    assert orbit(HALF, [1.0], 3).points[:, 0].tolist() == [1, 0.5, 0.25, 0.125]
    assert orbit(HALF_PLUS_ONE, [0.0], 80).points[-1, 0] == pytest.approx(2.0, abs=1e-15)
    tr = orbit(IDENTITY, [3.7], 5)
    assert np.all(tr.points == 3.7) and np.all(tr.step_distances == 0)
    assert tr.step_distances.size == len(tr) - 1


def test_orbit_undefined_region():
    T = MapDef((Piece([[0.5]], [3.0], interval(0, 2)),))
    with pytest.raises(UndefinedMapError):
        orbit(T, [1.0], 5)  # 1 -> 3.5 lies outside every piece
    with pytest.raises(RejectedInputError):
        orbit(HALF, [1.0], 0)


def test_piecewise_first_match_and_everywhere_last():
    T = MapDef((Piece([[1.0]], [1.0], interval(0, 1)), Piece([[0.0]], [-5.0])))
    assert T([0.5])[0] == 1.5
    assert T([1.0])[0] == 2.0  # first matching region wins at the boundary
    assert T([7.0])[0] == -5.0
    with pytest.raises(RejectedInputError):
        MapDef((Piece([[0.0]], [-5.0]), Piece([[1.0]], [1.0], interval(0, 1))))
    with pytest.raises(RejectedInputError):
        Piece([[1.0, 0.0]], [0.0])


def test_pair_trace_examples():
    assert pair_trace(HALF, [4.0], [0.0], 4).pair_distances.tolist() == [4, 2, 1, 0.5, 0.25]
    assert pair_trace(HALF_PLUS_ONE, [0.0], [8.0], 3).pair_distances.tolist() == [8, 4, 2, 1]
    d = pair_trace(rotation(0.3), [1.0, 2.0], [-0.5, 0.1], 200).pair_distances
    assert np.ptp(d) < 1e-12


def test_pair_trace_reports():
    sched = ParamSchedule("one_plus_c_over_n", {"alpha": [1, 1], "beta": 0.3, "mu": [-1, 0.5]})
    tr = pair_trace(HALF_PLUS_ONE, [0.0], [8.0], 10, sched)
    assert len(tr.reports) == 10
    assert all(r.holds for r in tr.reports)
    assert all(r.xi == 0.0 for r in tr.reports)  # a contraction needs no slack


def test_detect_fixed_point_examples():
    z = detect_fixed_point(orbit(HALF, [1.0], 60), HALF, 1e-9)
    assert z is not None and abs(z[0]) < 1e-9
    z = detect_fixed_point(orbit(IDENTITY, [4.2], 1), IDENTITY)
    assert z.tolist() == [4.2]
    assert detect_fixed_point(orbit(SHIFT, [0.0], 500), SHIFT) is None


def test_detect_fixed_point_rechecks_map():
    # a trace from one map must not certify a point for another
    tr = orbit(HALF, [1.0], 60)
    assert detect_fixed_point(tr, HALF_PLUS_ONE) is None


def test_tail_residuals_examples():
    tr = orbit(HALF, [1.0], 6)
    r = tail_residuals(tr, 2)
    assert r[:2].tolist() == [0.75, 0.375]
    assert np.all(tail_residuals(orbit(IDENTITY, [1.0], 6), 3) == 0)
    with pytest.raises(RejectedInputError):
        tail_residuals(tr, len(tr))
    with pytest.raises(RejectedInputError):
        tail_residuals(tr, 0)


def test_squared_gap_deltas_examples():
    d = squared_gap_deltas(pair_trace(HALF, [4.0], [0.0], 3))
    assert d.tolist() == [-12, -3, -0.75]
    assert np.all(np.abs(squared_gap_deltas(pair_trace(rotation(1.1), [1.0, 0.0], [0.0, 1.0], 50))) < 1e-12)
    single = pair_trace(HALF, [4.0], [0.0], 1)
    assert squared_gap_deltas(single).size == 1
    with pytest.raises(RejectedInputError):
        squared_gap_deltas(orbit(HALF, [1.0], 3))


def test_determinism():
    T = MapDef.affine([[0.3, -0.4], [0.2, 0.9]], [1.0, -2.0])
    a = orbit(T, [0.3, 0.7], 500).points
    b = orbit(T, [0.3, 0.7], 500).points
    assert a.tobytes() == b.tobytes()
    pw = MapDef((Piece([[0.5]], [0.0], interval(-10, 0)), Piece([[-0.5]], [0.0])))
    assert orbit(pw, [3.0], 100).points.tobytes() == orbit(pw, [3.0], 100).points.tobytes()


def test_traces_are_read_only():
    tr = orbit(HALF, [1.0], 3)
    with pytest.raises(ValueError):
        tr.points[0, 0] = 9.0


matrices = st.lists(st.floats(-2, 2), min_size=4, max_size=4).map(lambda v: np.array(v).reshape(2, 2))
vectors = st.lists(st.floats(-10, 10), min_size=2, max_size=2).map(np.array)


@settings(max_examples=150, deadline=None)
@given(matrices, vectors, vectors, vectors)
def test_nonexpansive_maps_shrink_pair_distances(M, c, x, y):
    norm = np.linalg.norm(M, 2)
    if norm > 1:
        M = M / norm
    d = pair_trace(MapDef.affine(M, c), x, y, 30).pair_distances
    assert np.all(np.diff(d) <= 1e-12 * (1 + d[:-1]))


@settings(max_examples=150, deadline=None)
@given(matrices, vectors, vectors)
def test_triangle_inequality_on_traces(M, c, x):
    M = M / max(1.0, np.linalg.norm(M, 2))
    tr = orbit(MapDef.affine(M, c), x, 30)
    two = tail_residuals(tr, 2)
    s = tr.step_distances
    assert np.all(two <= s[:-1] + s[1:] + 1e-12 * (1 + two))


def test_compare_limits():
    limits, same = compare_limits(HALF_PLUS_ONE, [[0.0], [100.0], [-7.0]], 100)
    assert same and all(abs(z[0] - 2) < 1e-9 for z in limits)
    limits, same = compare_limits(IDENTITY, [[0.0], [1.0]], 5)
    assert not same  # every point is fixed, so the limit depends on the start
