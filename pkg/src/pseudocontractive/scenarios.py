"""Built-in scenarios with closed-form ground truth, and the scenario file format.

A scenario file is JSON::

    {
      "name": "s1",
      "dim": 1,
      "metric": {"kind": "euclidean"},
      "map": {"pieces": [{"matrix": [[0.5]], "offset": [1.0]}]},
      "sets": {"A": {...}, "B": {...}},               # optional, cyclic runs
      "schedule": {"family": ..., "params": {...},    # optional
                   "limits": {...}, "variant": "cross"},
      "start": {"x0": [0.0], "y0": [8.0]},            # optional
      "expected": {"fixed_point": {"value": [2.0], "note": "..."}, ...}
    }

Matrices are row-major lists of rows. ``region`` inside a piece is a set
descriptor or the string ``"everywhere"``. Expected keys are
``fixed_point``, ``best_proximity_pair``, ``D`` and ``verdict``; each holds a
``value`` and a ``note`` saying where the number comes from.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .analysis import InequalityVariant, ParamSchedule, Verdict
from .errors import PseudocontractiveError, ScenarioError
from .iteration import MapDef, Piece
from .metric import MetricDef, Segment, convex_set_from_dict, interval

EXPECTED_KEYS = ("fixed_point", "best_proximity_pair", "D", "verdict")
SCHEDULE_CHECK_HORIZON = 1000


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    metric: MetricDef
    map: MapDef
    sets: tuple = None
    schedule: ParamSchedule = None
    variant: InequalityVariant = InequalityVariant.CROSS
    start: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    description: str = ""

    @property
    def dim(self):
        return self.map.dim

    @property
    def cyclic(self):
        return self.sets is not None

    def __eq__(self, other):
        return isinstance(other, Scenario) and scenario_to_dict(self) == scenario_to_dict(other)

    __hash__ = None


def _expect(value, note):
    return {"value": value, "note": note}


def builtin_scenarios():
    """The shipped scenario corpus, one closed-form witness per conclusion."""
    euclid = MetricDef()
    s1 = Scenario(
        name="s1",
        description="halving contraction T(x) = x/2 + 1 on the line",
        metric=euclid,
        map=MapDef.affine([[0.5]], [1.0]),
        schedule=ParamSchedule("one_plus_c_over_n",
                               {"alpha": [1.0, 1.0], "beta": 0.3, "mu": [-1.0, 0.5]}),
        start={"x0": [0.0], "y0": [8.0]},
        expected={
            "fixed_point": _expect([2.0], "derived: solve x = x/2 + 1"),
            "verdict": _expect(Verdict.STRICT_PSEUDO.value,
                               "derived: alpha_n = 1 + 1/n -> 1, beta = 0.3, mu_n = -1 + 1/(2n) -> -1"),
        },
    )
    s2 = Scenario(
        name="s2",
        description="cyclic isometry T(x) = -x between [1, 2] and [-2, -1]",
        metric=euclid,
        map=MapDef.affine([[-1.0]], [0.0]),
        sets=(interval(1.0, 2.0), interval(-2.0, -1.0)),
        start={"x0": [1.0], "y0": [-1.5]},
        expected={
            "D": _expect(2.0, "derived: gap between the intervals"),
            "best_proximity_pair": _expect([[1.0], [-1.0]], "derived: two-cycle 1 -> -1 -> 1"),
        },
    )
    seg_a = Segment([0.0, 1.0], [1.0, 1.0])
    seg_b = Segment([0.0, -1.0], [1.0, -1.0])
    swap = [[0.5, 0.0], [0.0, -1.0]]
    s3 = Scenario(
        name="s3",
        description="parallel segments y = 1 and y = -1, T(t, y) = (t/2, -y)",
        metric=euclid,
        map=MapDef((Piece(swap, [0.0, 0.0], seg_a), Piece(swap, [0.0, 0.0], seg_b))),
        sets=(seg_a, seg_b),
        schedule=ParamSchedule("one_plus_c_over_n",
                               {"alpha": [0.5, 1.0], "beta": [1.0, -1.0], "mu": -0.8}),
        variant=InequalityVariant.CYCLIC_CROSS,
        start={"x0": [1.0, 1.0], "y0": [0.5, -1.0]},
        expected={
            "D": _expect(2.0, "derived: vertical gap between the segments"),
            "best_proximity_pair": _expect([[0.0, 1.0], [0.0, -1.0]],
                                           "derived: T^(2n)(t, 1) = (t / 4^n, 1)"),
            "verdict": _expect(Verdict.CONTRACTIVE.value,
                               "derived: alpha_n -> 0.5, beta_n -> 1, mu = -0.8 < -0.75"),
        },
    )
    s4 = Scenario(
        name="s4",
        description="intersecting intervals [0, 2] and [1, 3], T(x) = 2.25 - x/2",
        metric=euclid,
        map=MapDef.affine([[-0.5]], [2.25]),
        sets=(interval(0.0, 2.0), interval(1.0, 3.0)),
        start={"x0": [0.0], "y0": [3.0]},
        expected={
            "fixed_point": _expect([1.5], "derived: solve x = 2.25 - x/2"),
            "D": _expect(0.0, "derived: the intervals overlap on [1, 2]"),
        },
    )
    c, s = math.cos(0.7), math.sin(0.7)
    s5 = Scenario(
        name="s5",
        description="planar rotation by 0.7 rad (isometry, no attracting fixed point)",
        metric=euclid,
        map=MapDef.affine([[c, -s], [s, c]], [0.0, 0.0]),
        start={"x0": [1.0, 0.0], "y0": [0.0, 2.0]},
    )
    return [s1, s2, s3, s4, s5]


def get_scenario(name):
    """Built-in scenario by name, or None."""
    for sc in builtin_scenarios():
        if sc.name == name:
            return sc
    return None


# ---------------------------------------------------------------------------
# serialisation


def scenario_to_dict(sc):
    d = {"name": sc.name, "dim": sc.dim, "metric": sc.metric.to_dict(), "map": sc.map.to_dict()}
    if sc.description:
        d["description"] = sc.description
    if sc.sets is not None:
        d["sets"] = {"A": sc.sets[0].to_dict(), "B": sc.sets[1].to_dict()}
    if sc.schedule is not None:
        d["schedule"] = dict(sc.schedule.to_dict(), variant=InequalityVariant(sc.variant).value)
    if sc.start:
        d["start"] = {k: list(map(float, v)) for k, v in sc.start.items()}
    if sc.expected:
        d["expected"] = json.loads(json.dumps(sc.expected))
    return d


def dump_scenario(sc, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(sc), fh, indent=2)
        fh.write("\n")


def _require(doc, key, where, kind=None):
    if key not in doc:
        raise ScenarioError("missing required field", field=f"{where}{key}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ScenarioError(f"expected {kind.__name__}", field=f"{where}{key}")
    return value


def _wrap(fieldname, invariant, fn, *args):
    try:
        return fn(*args)
    except ScenarioError:
        raise
    except (PseudocontractiveError, KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(str(exc), field=fieldname, invariant=invariant) from exc


def _metric_from_dict(d):
    p = d.get("p", 2.0)
    p = math.inf if p == "inf" else float(p)
    return MetricDef(d.get("kind", "euclidean"), p, tuple(d.get("weights", ())))


def scenario_from_dict(doc):
    """Build and fully validate a Scenario from a parsed document."""
    if not isinstance(doc, dict):
        raise ScenarioError("top level must be an object")
    name = _require(doc, "name", "", str)
    dim = _require(doc, "dim", "", int)
    if dim < 1:
        raise ScenarioError("dim must be >= 1", field="dim", invariant="positive dimension")
    metric = _wrap("metric", "MetricDef", _metric_from_dict, _require(doc, "metric", "", dict))
    if metric.kind == "weighted_euclidean" and len(metric.weights) != dim:
        raise ScenarioError("one weight per coordinate required", field="metric.weights",
                            invariant="map dimension matches metric dimension")
    mdoc = _require(doc, "map", "", dict)
    pieces = _require(mdoc, "pieces", "map.", list)
    for i, pd in enumerate(pieces):
        m = np.asarray(pd.get("matrix", []), dtype=float) if isinstance(pd, dict) else None
        if m is None or m.ndim != 2 or m.shape != (dim, dim):
            raise ScenarioError(f"matrix must be {dim}x{dim}", field=f"map.pieces[{i}].matrix",
                                invariant="matrix dimension matches space dimension")
        if len(pd.get("offset", [])) != dim:
            raise ScenarioError(f"offset must have {dim} entries", field=f"map.pieces[{i}].offset",
                                invariant="offset dimension matches space dimension")
    tmap = _wrap("map", "MapDef", MapDef.from_dict, mdoc)

    sets = None
    if "sets" in doc:
        sdoc = doc["sets"]
        a = _wrap("sets.A", "ConvexSetDescriptor", convex_set_from_dict, _require(sdoc, "A", "sets.", dict))
        b = _wrap("sets.B", "ConvexSetDescriptor", convex_set_from_dict, _require(sdoc, "B", "sets.", dict))
        for key, s in (("A", a), ("B", b)):
            if s.dim != dim:
                raise ScenarioError(f"set has dimension {s.dim}", field=f"sets.{key}",
                                    invariant="set dimension matches space dimension")
        sets = (a, b)

    schedule, variant = None, InequalityVariant.CROSS
    if "schedule" in doc:
        sd = dict(doc["schedule"])
        variant = _wrap("schedule.variant", "InequalityVariant", InequalityVariant,
                        sd.pop("variant", "cross"))
        schedule = _wrap("schedule", "ParamSchedule", ParamSchedule.from_dict, sd)
        horizon = SCHEDULE_CHECK_HORIZON
        if schedule.family == "explicit_table":
            horizon = max(len(v) for v in schedule.params.values() if not np.isscalar(v))
        _wrap("schedule.params", "ParamPoint", schedule.arrays, horizon)

    start = {}
    for key, v in doc.get("start", {}).items():
        if key not in ("x0", "y0"):
            raise ScenarioError("unknown start key", field=f"start.{key}")
        if not isinstance(v, list) or len(v) != dim:
            raise ScenarioError(f"start point must have {dim} coordinates", field=f"start.{key}",
                                invariant="point dimension matches space dimension")
        start[key] = [float(c) for c in v]

    expected = doc.get("expected", {})
    for key, entry in expected.items():
        if key not in EXPECTED_KEYS:
            raise ScenarioError("unknown expected key", field=f"expected.{key}")
        if not isinstance(entry, dict) or "value" not in entry or not entry.get("note"):
            raise ScenarioError("expected entries need a value and a provenance note",
                                field=f"expected.{key}", invariant="expected values carry provenance")
        val = entry["value"]
        if key == "fixed_point" and len(val) != dim:
            raise ScenarioError("fixed point has wrong dimension", field="expected.fixed_point.value",
                                invariant="point dimension matches space dimension")
        if key == "best_proximity_pair" and (len(val) != 2 or any(len(v) != dim for v in val)):
            raise ScenarioError("proximity pair must be two points", field="expected.best_proximity_pair.value",
                                invariant="point dimension matches space dimension")
        if key == "verdict" and val not in {v.value for v in Verdict}:
            raise ScenarioError("unknown verdict", field="expected.verdict.value")

    return Scenario(name=name, metric=metric, map=tmap, sets=sets, schedule=schedule,
                    variant=variant, start=start, expected=json.loads(json.dumps(expected)),
                    description=doc.get("description", ""))


def load_scenario(path):
    """Read and validate a scenario file.

    Raises ``ScenarioError`` carrying the line number for syntax errors and the
    field path plus violated invariant for semantic ones.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"malformed JSON: {exc.msg}", line=exc.lineno) from exc
    return scenario_from_dict(doc)


def resolve_scenario(ref):
    """Built-in name or path to a scenario file."""
    sc = get_scenario(ref)
    if sc is not None:
        return sc
    return load_scenario(ref)
