import json

import pytest

from pseudocontractive.errors import ScenarioError
from pseudocontractive.report import FAIL, run_scenario
from pseudocontractive.scenarios import (
    builtin_scenarios,
    dump_scenario,
    get_scenario,
    load_scenario,
    resolve_scenario,
    scenario_to_dict,
)


def test_lookup():
    assert get_scenario("s1").expected["fixed_point"]["value"] == [2.0]
    assert get_scenario("s2").expected["D"]["value"] == 2.0
    assert get_scenario("nope") is None
    assert [s.name for s in builtin_scenarios()] == ["s1", "s2", "s3", "s4", "s5"]


@pytest.mark.parametrize("sc", builtin_scenarios(), ids=lambda s: s.name)
def test_round_trip(sc, tmp_path):
    path = tmp_path / f"{sc.name}.json"
    dump_scenario(sc, path)
    assert load_scenario(path) == sc
    assert resolve_scenario(str(path)) == sc


@pytest.mark.parametrize("sc", builtin_scenarios(), ids=lambda s: s.name)
def test_builtins_pass_their_own_checks(sc):
    report = run_scenario(sc, iters=100)
    assert report.status != FAIL, report.checks


@pytest.mark.parametrize("sc", builtin_scenarios(), ids=lambda s: s.name)
def test_expected_values_carry_notes(sc):
    assert all(entry["note"] for entry in sc.expected.values())


def _write(tmp_path, doc):
    path = tmp_path / "sc.json"
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return path


def _s1_doc():
    return scenario_to_dict(get_scenario("s1"))


def test_matrix_dimension_mismatch(tmp_path):
    doc = _s1_doc()
    doc["map"]["pieces"][0]["matrix"] = [[0.5, 0.0]]
    with pytest.raises(ScenarioError) as info:
        load_scenario(_write(tmp_path, doc))
    assert info.value.field == "map.pieces[0].matrix"
    assert "dimension" in info.value.invariant


def test_negative_beta(tmp_path):
    doc = _s1_doc()
    doc["schedule"]["params"]["beta"] = -0.1
    with pytest.raises(ScenarioError) as info:
        load_scenario(_write(tmp_path, doc))
    assert info.value.invariant == "ParamPoint"
    assert "beta" in str(info.value)


def test_malformed_json_reports_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "name": "x",\n  "dim": 1,\n  oops\n}\n', encoding="utf-8")
    with pytest.raises(ScenarioError) as info:
        load_scenario(path)
    assert info.value.line == 4


@pytest.mark.parametrize("mutate, fieldname", [
    (lambda d: d.pop("metric"), "metric"),
    (lambda d: d["start"].update(x0=[0.0, 1.0]), "start.x0"),
    (lambda d: d["expected"]["fixed_point"].pop("note"), "expected.fixed_point"),
    (lambda d: d["expected"].update(colour={"value": 1, "note": "x"}), "expected.colour"),
    (lambda d: d["schedule"].update(family="wobble"), "schedule"),
])
def test_field_errors(tmp_path, mutate, fieldname):
    doc = _s1_doc()
    mutate(doc)
    with pytest.raises(ScenarioError) as info:
        load_scenario(_write(tmp_path, doc))
    assert info.value.field == fieldname


def test_set_dimension_mismatch(tmp_path):
    doc = scenario_to_dict(get_scenario("s3"))
    doc["sets"]["A"] = {"kind": "box", "lower": [0.0], "upper": [1.0]}
    with pytest.raises(ScenarioError) as info:
        load_scenario(_write(tmp_path, doc))
    assert info.value.field == "sets.A"


def test_unknown_reference():
    with pytest.raises(OSError):
        resolve_scenario("/nonexistent/scenario.json")
